//! The degree/remainder sequence families, their mod-3 starred variants,
//! genus-parametrized variants, critical values, and the two-step
//! degree/genus schedule recursion.
//!
//! Every family is the Euclidean solution of one linear relation against a
//! twist dimension from [`crate::cohom`], with the remainder window exactly
//! as stated there. Starred values are the largest number below the base
//! meeting a mod-3 congruence chosen so that point counts divide evenly by
//! the rank-3 bundles.

use serde::Serialize;

use crate::cohom::{h0_omega_twist_m, h0_proj, h0_tpi_twist_m};
use crate::{Error, Result};

/// The six genus-independent families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `d''(m), r(m)` — postulation of rational curves against `O(m)`.
    Dpp,
    /// `delta''(m), rho(m)` — the same against `O(m)` with a 4-point offset.
    DeltaPp,
    /// `d(m), a(m), b(m)` against `h0(Omega(m+1))`.
    OmegaBase,
    /// `d'(m), a'(m), b'(m)` against `h0(TPi(m-2))`.
    TpiBase,
    /// `delta(m), alpha(m), beta(m)` against `h0(Omega(m+1))`.
    DeltaOmega,
    /// `delta'(m), alpha'(m), beta'(m)` against `h0(TPi(m-2))`.
    DeltaTpi,
}

/// Starred companion of a base value: the maximal integer below the base in
/// the right congruence class, together with the transferred remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Star {
    pub base: i64,
    pub rem: i64,
}

/// One row of a sequence family at index `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeqRecord {
    pub m: i64,
    pub family: Family,
    pub base: i64,
    pub rem_a: i64,
    pub rem_b: i64,
    /// `None` for the two families without a starred variant.
    pub star: Option<Star>,
}

/// The two genus-parametrized families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GenusFamily {
    /// `d(m,g), a(m,g), b(m,g)` against `h0(Omega(m+1))`.
    OmegaGenus,
    /// `d'(m,g), a'(m,g), b'(m,g)` against `h0(TPi(m-2))`.
    TpiGenus,
}

/// One row of a genus-parametrized family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusSeqRecord {
    pub m: i64,
    pub g: i64,
    pub family: GenusFamily,
    pub base: i64,
    pub rem_a: i64,
    pub rem_b: i64,
    pub star: Star,
    /// Whether `rem_b` agrees with the genus-0 value `b(m)`; the source text
    /// asserts it always does, the solver reports instead of assuming.
    pub b_matches_genus_zero: bool,
}

// Largest value <= base congruent to target mod 3.
fn step_down_mod3(base: i64, target: i64) -> i64 {
    base - (base - target).rem_euclid(3)
}

/// Congruence class required of omega-side stars: `-star ≡ h0 (mod 3)`.
fn omega_star(base: i64, h0: i64) -> i64 {
    step_down_mod3(base, (-h0).rem_euclid(3))
}

/// Congruence class required of tangent-side stars: `-2·star ≡ h0 (mod 3)`,
/// i.e. `star ≡ h0 (mod 3)`.
fn tpi_star(base: i64, h0: i64) -> i64 {
    step_down_mod3(base, h0.rem_euclid(3))
}

/// `d''(m), r(m)`: the unique pair with
/// `m·d''(m) + 1 + r(m) = h0(O(m))`, `0 <= r <= m-1`; `(1, 0)` at `m = 0`.
pub fn dpp(m: i64) -> Result<(i64, i64)> {
    if m < 0 {
        return Err(Error::NegativeIndex { what: "dpp", m });
    }
    if m == 0 {
        return Ok((1, 0));
    }
    let (q, r) = (h0_proj(m) - 1).div_rem_checked(m, "dpp", m)?;
    Ok((q, r))
}

/// `d''` and `r` by the degree-6 periodic closed forms.
///
/// The printed form for the `6k+3` class repeats the `6k+1` line and cannot
/// satisfy the defining relation; the unique consistent polynomial
/// `6k^2 + 12k + 6` is used instead (the printed remainder `2k+1` is kept).
pub fn closed_form_dpp(m: i64) -> Result<(i64, i64)> {
    if m < 0 {
        return Err(Error::NegativeIndex { what: "closed_form_dpp", m });
    }
    let k = m / 6;
    Ok(match m % 6 {
        0 => (6 * k * k + 6 * k + 1, 5 * k),
        1 => (6 * k * k + 8 * k + 3, 0),
        2 => (6 * k * k + 10 * k + 4, 3 * k + 1),
        3 => (6 * k * k + 12 * k + 6, 2 * k + 1),
        4 => (6 * k * k + 14 * k + 8, 3 * k + 2),
        _ => (6 * k * k + 16 * k + 11, 0),
    })
}

trait DivRem {
    fn div_rem_checked(self, d: i64, what: &'static str, m: i64) -> Result<(i64, i64)>;
}

impl DivRem for i64 {
    fn div_rem_checked(self, d: i64, what: &'static str, m: i64) -> Result<(i64, i64)> {
        if d <= 0 {
            return Err(Error::IndexTooSmall { what, m, min: 2 });
        }
        let q = self.div_euclid(d);
        let r = self.rem_euclid(d);
        Ok((q, r))
    }
}

/// Solve one of the six families at `m`.
///
/// `Dpp` accepts `m >= 0`, everything else `m >= 2`. The remainder digits
/// satisfy the printed window by construction of the Euclidean division; a
/// window violation is a solver bug and fails loudly.
pub fn solve_family(m: i64, family: Family) -> Result<SeqRecord> {
    match family {
        Family::Dpp => {
            let (base, r) = dpp(m)?;
            return Ok(SeqRecord { m, family, base, rem_a: r, rem_b: 0, star: None });
        }
        Family::DeltaPp => {
            if m < 2 {
                return Err(Error::IndexTooSmall { what: "delta_pp", m, min: 2 });
            }
            let (base, r) = (h0_proj(m) - 4).div_rem_checked(m - 1, "delta_pp", m)?;
            if r > m - 2 {
                return Err(Error::RemainderWindow { what: "delta_pp", m });
            }
            return Ok(SeqRecord { m, family, base, rem_a: r, rem_b: 0, star: None });
        }
        _ => {}
    }
    if m < 2 {
        return Err(Error::IndexTooSmall { what: "solve_family", m, min: 2 });
    }
    let (lead, rhs, window, h0, omega_side) = match family {
        Family::OmegaBase => {
            let h = h0_omega_twist_m(m)?;
            (3 * m - 1, h - 3, 3 * m - 2, h, true)
        }
        Family::TpiBase => {
            let h = h0_tpi_twist_m(m)?;
            (3 * m - 2, h - 3, 3 * m - 3, h, false)
        }
        Family::DeltaOmega => {
            let h = h0_omega_twist_m(m)?;
            (3 * m - 4, h - 12, 3 * m - 5, h, true)
        }
        Family::DeltaTpi => {
            let h = h0_tpi_twist_m(m)?;
            (3 * m - 5, h - 12, 3 * m - 6, h, false)
        }
        Family::Dpp | Family::DeltaPp => unreachable!(),
    };
    let (base, rem) = rhs.div_rem_checked(lead, "solve_family", m)?;
    if rem > window {
        return Err(Error::RemainderWindow { what: "solve_family", m });
    }
    let star_base = if omega_side { omega_star(base, h0) } else { tpi_star(base, h0) };
    let transfer = lead * (base - star_base) + rem;
    debug_assert_eq!(transfer % 3, 0, "star remainder must be an integer");
    Ok(SeqRecord {
        m,
        family,
        base,
        rem_a: rem / 3,
        rem_b: rem % 3,
        star: Some(Star { base: star_base, rem: transfer / 3 }),
    })
}

/// Solve a genus-parametrized family at `(m, g)`.
///
/// The base is maximal with the combined remainder in the same window as
/// the genus-0 family; the starred variant follows the genus-0 congruence
/// and remainder-transfer rule verbatim.
pub fn solve_genus_family(m: i64, g: i64, family: GenusFamily) -> Result<GenusSeqRecord> {
    if m < 2 {
        return Err(Error::IndexTooSmall { what: "solve_genus_family", m, min: 2 });
    }
    if g < 0 {
        return Err(Error::NegativeIndex { what: "solve_genus_family", m: g });
    }
    let (lead, h0, window, omega_side) = match family {
        GenusFamily::OmegaGenus => (3 * m - 1, h0_omega_twist_m(m)?, 3 * m - 2, true),
        GenusFamily::TpiGenus => (3 * m - 2, h0_tpi_twist_m(m)?, 3 * m - 3, false),
    };
    let rhs = h0 - 3 * (1 - g);
    let (base, rem) = rhs.div_rem_checked(lead, "solve_genus_family", m)?;
    if rem > window {
        return Err(Error::RemainderWindow { what: "solve_genus_family", m });
    }
    let star_base = if omega_side { omega_star(base, h0) } else { tpi_star(base, h0) };
    let transfer = lead * (base - star_base) + rem;
    debug_assert_eq!(transfer % 3, 0);
    let b0 = solve_family(
        m,
        if omega_side { Family::OmegaBase } else { Family::TpiBase },
    )?
    .rem_b;
    Ok(GenusSeqRecord {
        m,
        g,
        family,
        base,
        rem_a: rem / 3,
        rem_b: rem % 3,
        star: Star { base: star_base, rem: transfer / 3 },
        b_matches_genus_zero: rem % 3 == b0,
    })
}

/// Both readings of the genus-shift relation for a record: the printed form
/// `(d(m,g)-d(m))(3m-1) + a(m,g) = a(m) + g` and the division-consistent
/// form `(3m-1)Δd + 3Δa + Δb = 3g`.
pub fn genus_shift_relation(rec: &GenusSeqRecord) -> Result<(bool, bool)> {
    let base_family = match rec.family {
        GenusFamily::OmegaGenus => Family::OmegaBase,
        GenusFamily::TpiGenus => Family::TpiBase,
    };
    let lead = match rec.family {
        GenusFamily::OmegaGenus => 3 * rec.m - 1,
        GenusFamily::TpiGenus => 3 * rec.m - 2,
    };
    let g0 = solve_family(rec.m, base_family)?;
    let dd = rec.base - g0.base;
    let printed = dd * lead + rec.rem_a == g0.rem_a + rec.g;
    let exact = dd * lead + 3 * (rec.rem_a - g0.rem_a) + (rec.rem_b - g0.rem_b) == 3 * rec.g;
    Ok((printed, exact))
}

/// Critical value of `(d, g)`: 1 for `(3,0)` and `(4,1)`, otherwise the
/// least `k >= 2` with `kd + 1 - g <= h0(O(k))`.
pub fn critical_value(d: i64, g: i64) -> Result<i64> {
    if d <= 0 {
        return Err(Error::NonPositiveDegree { d });
    }
    if g < 0 {
        return Err(Error::NegativeIndex { what: "critical_value", m: g });
    }
    if (d, g) == (3, 0) || (d, g) == (4, 1) {
        return Ok(1);
    }
    let mut k = 2i64;
    loop {
        if k * d + 1 - g <= h0_proj(k) {
            return Ok(k);
        }
        k += 1;
    }
}

/// Critical value of the pair `(g+3, g)`.
pub fn m_o(g: i64) -> Result<i64> {
    critical_value(g + 3, g)
}

/// One state of the degree/genus schedule: index `x` (same parity as the
/// start `s`), degree `u`, genus `g`, and leftover point count `v`, tied
/// together by `(3x-1)u + 3(1-g) + 3v = h0(Omega(x+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScheduleRecord {
    pub s: i64,
    pub x: i64,
    pub u: i64,
    pub g: i64,
    pub v: i64,
}

impl ScheduleRecord {
    /// Check the defining balance and the leftover window `0 <= v <= 3x-1`.
    // the window comparison mirrors the stated bound
    #[allow(clippy::int_plus_one)]
    pub fn is_valid(&self) -> bool {
        self.x >= 2
            && (self.x - self.s) % 2 == 0
            && self.v >= 0
            && self.v <= 3 * self.x - 1
            && h0_omega_twist_m(self.x)
                .is_ok_and(|w| (3 * self.x - 1) * self.u + 3 * (1 - self.g) + 3 * self.v == w)
    }
}

/// Initial schedule state at `x = s`: degree `delta(s)*`, genus three less,
/// leftover `alpha(s)*`.
pub fn schedule_start(s: i64) -> Result<ScheduleRecord> {
    let rec = solve_family(s, Family::DeltaOmega)?;
    let star = rec.star.expect("delta family has stars");
    Ok(ScheduleRecord { s, x: s, u: star.base, g: star.base - 3, v: star.rem })
}

/// Advance the schedule from `x` to `x + 2`.
///
/// `z` is the maximal degree whose induced leftover is nonnegative; the new
/// degree is the unique value in `{z-2, z-1, z}` whose leftover is an
/// integer, i.e. with `-u ≡ h0(Omega(x+3)) (mod 3)`.
pub fn schedule_step(rec: &ScheduleRecord) -> Result<ScheduleRecord> {
    if !rec.is_valid() {
        return Err(Error::ScheduleCorrupt(format!("{rec:?} fails its invariants")));
    }
    let x = rec.x;
    let w_next = h0_omega_twist_m(x + 2)?;
    // (3x+5)z + 3(1 - g - 2(z - u - 20)) <= w_next, collected in z:
    let numer = w_next - 3 * (1 - rec.g) - 6 * rec.u - 120;
    let z = numer.div_euclid(3 * x - 1);
    let target = (-w_next).rem_euclid(3);
    let u_next = [z, z - 1, z - 2]
        .into_iter()
        .find(|u| u.rem_euclid(3) == target)
        .expect("three consecutive values cover every residue");
    let g_next = rec.g + 2 * (u_next - rec.u - 20);
    let rest = w_next - (3 * x + 5) * u_next - 3 * (1 - g_next);
    if rest % 3 != 0 {
        return Err(Error::ScheduleCorrupt(format!(
            "leftover at x={} is not an integer",
            x + 2
        )));
    }
    let v_next = rest / 3;
    if v_next < 0 || v_next > 3 * x + 5 {
        return Err(Error::ScheduleCorrupt(format!(
            "leftover {v_next} at x={} escapes [0, {}]",
            x + 2,
            3 * x + 5
        )));
    }
    Ok(ScheduleRecord { s: rec.s, x: x + 2, u: u_next, g: g_next, v: v_next })
}

/// Dense per-index table of one family over `[lo, hi]`, for sweeps.
#[derive(Debug, Clone)]
pub struct SeqTable {
    pub lo: i64,
    pub records: Vec<SeqRecord>,
}

impl SeqTable {
    pub fn build(family: Family, lo: i64, hi: i64) -> Result<Self> {
        let mut records = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for m in lo..=hi {
            records.push(solve_family(m, family)?);
        }
        Ok(SeqTable { lo, records })
    }

    pub fn at(&self, m: i64) -> &SeqRecord {
        &self.records[(m - self.lo) as usize]
    }
}
