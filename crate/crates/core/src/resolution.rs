//! Hilbert functions, Hilbert-numerator coefficients, expected graded Betti
//! tables, generator counts, and the two maximal-rank defect numbers for a
//! nonspecial maximal-rank curve.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohom::{h0_omega_twist_m, h0_proj, h0_tpi_twist_m, rr_conditions, BundleKind};
use crate::seq::critical_value;
use crate::{Error, Result};

/// A nonspecial space curve class `(d, g)` with its critical value cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub d: i64,
    pub g: i64,
    pub m: i64,
}

impl Curve {
    /// Requires `d >= g + 3`; outside that range the `h^1` pattern is not
    /// determined and no Betti prediction is made.
    pub fn new(d: i64, g: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::NonPositiveDegree { d });
        }
        if g < 0 {
            return Err(Error::NegativeIndex { what: "Curve::new", m: g });
        }
        if d < g + 3 {
            return Err(Error::SpecialCurve { d, g });
        }
        Ok(Curve { d, g, m: critical_value(d, g)? })
    }
}

/// Graded Betti numbers of the expected minimal free resolution, together
/// with the Hilbert-numerator coefficients they must reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `(homological degree i, internal degree j) -> multiplicity`.
    pub entries: BTreeMap<(u8, i64), i64>,
    pub numerator: Vec<i64>,
}

impl BettiTable {
    pub fn beta(&self, i: u8, j: i64) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `h_j = -b_{1,j} + b_{2,j} - b_{3,j}` for every `j >= 1`, with
    /// `h_0 = 1` and nothing in column 0.
    pub fn satisfies_alternating_sums(&self) -> bool {
        if self.numerator.first() != Some(&1) {
            return false;
        }
        if (1..=3).any(|i| self.beta(i, 0) != 0) {
            return false;
        }
        let top = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let len = self.numerator.len() as i64;
        for j in 1..=top.max(len - 1) {
            let h = self.numerator.get(j as usize).copied().unwrap_or(0);
            if -self.beta(1, j) + self.beta(2, j) - self.beta(3, j) != h {
                return false;
            }
        }
        true
    }

    /// At most one homological degree is populated in each column.
    pub fn single_degree_per_column(&self) -> bool {
        let mut seen: BTreeMap<i64, u8> = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            if b == 0 {
                continue;
            }
            if let Some(&prev) = seen.get(&j) {
                if prev != i {
                    return false;
                }
            }
            seen.insert(j, i);
        }
        true
    }
}

/// Dimension of the degree-`n` graded piece of the coordinate ring:
/// `min(h0(O(n)), nd + 1 - g)` for `n >= 1`.
pub fn hilbert_function(c: &Curve, n: i64) -> i64 {
    if n < 0 {
        0
    } else if n == 0 {
        1
    } else {
        h0_proj(n).min(n * c.d + 1 - c.g)
    }
}

/// `h0` of the degree-`n` part of the homogeneous ideal.
pub fn ideal_h0(c: &Curve, n: i64) -> i64 {
    h0_proj(n) - hilbert_function(c, n)
}

/// Hilbert-numerator coefficients: fourth differences of the Hilbert
/// function, trailing zeros trimmed.
///
/// For a maximal-rank curve every coefficient beyond degree `m+4` vanishes;
/// a nonzero one there signals a non-maximal-rank Hilbert function and is
/// an error.
pub fn numerator(c: &Curve) -> Result<Vec<i64>> {
    const BINOM4: [i64; 5] = [1, -4, 6, -4, 1];
    let top = c.m + 5;
    let mut h = Vec::with_capacity(top as usize + 1);
    for j in 0..=top {
        let coeff: i64 = (0..5).map(|i| BINOM4[i] * hilbert_function(c, j - i as i64)).sum();
        h.push(coeff);
    }
    for (j, &coeff) in h.iter().enumerate() {
        if coeff != 0 && j as i64 > c.m + 4 {
            return Err(Error::RegularityViolation { d: c.d, g: c.g });
        }
    }
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    Ok(h)
}

/// Greedy sign-monotone assignment of the numerator to Betti numbers:
/// scanning columns upward, negative coefficients land in odd homological
/// degree, positive in even, and the degree never decreases. This is the
/// unique table with one homological degree per column compatible with the
/// numerator.
pub fn expected_betti(c: &Curve) -> Result<BettiTable> {
    let numerator = numerator(c)?;
    let mut entries = BTreeMap::new();
    let mut i: u8 = 1;
    for (j, &h) in numerator.iter().enumerate().skip(1) {
        if h == 0 {
            continue;
        }
        let want_odd = h < 0;
        if (i % 2 == 1) != want_odd {
            i += 1;
        }
        if i > 3 {
            return Err(Error::ProjectiveDimension { d: c.d, g: c.g });
        }
        entries.insert((i, j as i64), h.abs());
    }
    Ok(BettiTable { entries, numerator })
}

/// Generator counts of the homogeneous ideal: the degree-`m` count and the
/// expected degree-`m+1` count `max(0, h0(I(m+1)) - 4 h0(I(m)))`.
pub fn generator_counts(c: &Curve) -> (i64, i64) {
    let n_m = ideal_h0(c, c.m);
    let n_m1 = (ideal_h0(c, c.m + 1) - 4 * n_m).max(0);
    (n_m, n_m1)
}

/// Maximal-rank defects at the critical twist: `h0` of the twisted bundle
/// minus the condition count imposed by the curve. Positive means the
/// injective regime, negative the surjective one; zero admits both.
pub fn defects(c: &Curve) -> (i64, i64) {
    let chi = 1 - c.g;
    let e_omega = h0_omega_twist_m(c.m).expect("m >= 1")
        - rr_conditions(BundleKind::Cotangent, c.m, c.d, chi).expect("cotangent");
    let e_tpi = h0_tpi_twist_m(c.m).expect("m >= 1")
        - rr_conditions(BundleKind::Tangent, c.m, c.d, chi).expect("tangent");
    (e_omega, e_tpi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(d: i64, g: i64) -> Curve {
        Curve::new(d, g).unwrap()
    }

    #[test]
    fn constructor_guards() {
        assert!(Curve::new(4, 2).is_err());
        assert!(Curve::new(0, 0).is_err());
        assert_eq!(curve(3, 0).m, 1);
        assert_eq!(curve(19, 0).m, 8);
    }

    #[test]
    fn hilbert_function_values() {
        // min(10, 7): the twisted cubic sits on three quadrics
        assert_eq!(hilbert_function(&curve(3, 0), 2), 7);
        assert_eq!(hilbert_function(&curve(4, 1), 1), 4);
        assert_eq!(hilbert_function(&curve(5, 1), 3), 15);
        assert_eq!(hilbert_function(&curve(5, 1), 0), 1);
        assert_eq!(hilbert_function(&curve(5, 1), -2), 0);
    }

    #[test]
    fn ideal_h0_values() {
        assert_eq!(ideal_h0(&curve(3, 0), 2), 3);
        assert_eq!(ideal_h0(&curve(3, 0), 1), 0);
        assert_eq!(ideal_h0(&curve(19, 0), 8), 12);
    }

    #[test]
    fn numerator_fixtures() {
        assert_eq!(numerator(&curve(3, 0)).unwrap(), vec![1, 0, -3, 2]);
        assert_eq!(numerator(&curve(4, 1)).unwrap(), vec![1, 0, -2, 0, 1]);
        assert_eq!(numerator(&curve(5, 1)).unwrap(), vec![1, 0, 0, -5, 5, -1]);
    }

    #[test]
    fn numerator_coefficients_sum_to_zero() {
        for (d, g) in [(3, 0), (4, 1), (5, 1), (19, 0), (40, 12), (200, 60)] {
            let n = numerator(&curve(d, g)).unwrap();
            assert_eq!(n.iter().sum::<i64>(), 0, "({d},{g})");
            assert_eq!(n[0], 1);
            if d >= 4 {
                assert_eq!(n[1], 0);
            }
        }
    }

    #[test]
    fn betti_fixtures() {
        let t = expected_betti(&curve(3, 0)).unwrap();
        assert_eq!(t.beta(1, 2), 3);
        assert_eq!(t.beta(2, 3), 2);
        assert_eq!(t.entries.len(), 2);

        let t = expected_betti(&curve(4, 1)).unwrap();
        assert_eq!(t.beta(1, 2), 2);
        assert_eq!(t.beta(2, 4), 1);
        assert_eq!(t.entries.len(), 2);

        let t = expected_betti(&curve(5, 1)).unwrap();
        assert_eq!(t.beta(1, 3), 5);
        assert_eq!(t.beta(2, 4), 5);
        assert_eq!(t.beta(3, 5), 1);
        assert_eq!(t.entries.len(), 3);
    }

    #[test]
    fn betti_invariants_hold_on_fixtures() {
        for (d, g) in [(3, 0), (4, 1), (5, 1), (19, 0), (63, 60)] {
            let t = expected_betti(&curve(d, g)).unwrap();
            assert!(t.satisfies_alternating_sums(), "({d},{g})");
            assert!(t.single_degree_per_column(), "({d},{g})");
            assert!(t.entries.values().all(|&b| b > 0));
        }
    }

    #[test]
    fn generator_count_values() {
        assert_eq!(generator_counts(&curve(3, 0)), (0, 3));
        assert_eq!(generator_counts(&curve(19, 0)), (12, 0));
        assert_eq!(generator_counts(&curve(4, 1)), (0, 2));
    }

    #[test]
    fn generator_counts_match_first_column() {
        for (d, g) in [(3, 0), (4, 1), (5, 1), (19, 0), (37, 20), (101, 55)] {
            let c = curve(d, g);
            let t = expected_betti(&c).unwrap();
            let (n_m, n_m1) = generator_counts(&c);
            assert_eq!(n_m, t.beta(1, c.m), "({d},{g}) deg m");
            assert_eq!(n_m1, t.beta(1, c.m + 1), "({d},{g}) deg m+1");
        }
    }

    #[test]
    fn defect_values() {
        assert_eq!(defects(&curve(5, 1)).0, -5);
        assert_eq!(defects(&curve(4, 1)).1, 0);
        assert_eq!(defects(&curve(3, 0)).0, -3);
    }

    #[test]
    fn middle_column_is_forced_by_euler_characteristic() {
        // beta_2 reconstructed from the numerator and the outer columns.
        for (d, g) in [(5, 1), (19, 0), (48, 31), (150, 9)] {
            let c = curve(d, g);
            let t = expected_betti(&c).unwrap();
            for (j, &h) in t.numerator.iter().enumerate().skip(1) {
                let j = j as i64;
                let forced = h + t.beta(1, j) + t.beta(3, j);
                assert_eq!(t.beta(2, j), forced, "({d},{g}) column {j}");
            }
        }
    }
}
