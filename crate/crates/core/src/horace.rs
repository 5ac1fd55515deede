//! Combinatorial model of one specialization step on a smooth quadric:
//! line configurations with secancy data, nilpotents at crossings, nets of
//! points, and the balance checks every case recipe must satisfy.
//!
//! Nothing here decides geometric realizability; the module checks the
//! arithmetic shadow of a step — degrees, Euler characteristics, twists,
//! and point budgets — and reports both sides of every equation.

use serde::Serialize;

use crate::cohom::{
    h0_omega_quadric, h0_omega_twist_m, h0_tpi_quadric, h0_tpi_twist_m, CohomDims,
};
use crate::seq::{solve_family, solve_genus_family, Family, GenusFamily};
use crate::{Error, Result};

/// Which inductive chain a recipe belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    HO,
    HT,
    RO,
    RT,
}

impl StepKind {
    pub fn is_cotangent(self) -> bool {
        matches!(self, StepKind::HO | StepKind::RO)
    }

    /// Chains with the genus tied to the degree (`g = d - 3`).
    pub fn is_degree_linked(self) -> bool {
        matches!(self, StepKind::HO | StepKind::HT)
    }
}

/// The two rulings of lines on a smooth quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Ruling {
    R10,
    R01,
}

impl Ruling {
    fn class(self) -> (i64, i64) {
        match self {
            Ruling::R10 => (1, 0),
            Ruling::R01 => (0, 1),
        }
    }
}

/// A group of identical added lines: `count` lines of one ruling, each
/// meeting the incoming curve in `secancy` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineGroup {
    pub count: i64,
    pub ruling: Ruling,
    pub secancy: i64,
}

/// A group of added curves of arbitrary bidegree, used by a handful of
/// seed recipes that attach conics and twisted cubics on the quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveGroup {
    pub count: i64,
    pub class: (i64, i64),
    pub secancy: i64,
}

/// Parameters of a net of points: `a` lines of one ruling, `b` of the
/// other, and `(a-1)b + t` of their crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NetParams {
    pub a: i64,
    pub b: i64,
    pub t: i64,
}

/// Where a recipe's extra points sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Placement {
    Net(NetParams),
    /// On the singular set of an `(a, b)` line configuration, with no `t`
    /// structure printed.
    Grid { a: i64, b: i64 },
    OnLine,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtraPoints {
    pub count: i64,
    pub placement: Placement,
}

/// The quadric-surface vanishing lemmas a recipe may invoke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LemmaId {
    L3_1,
    L3_2,
    L3_6,
    L3_7,
    L3_8,
    L3_9,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaRef {
    pub id: LemmaId,
    /// Net parameters when the source states them.
    pub net: Option<NetParams>,
    /// `(x, y)` when the source states them (else the trace twist is used).
    pub xy: Option<(i64, i64)>,
}

/// One transcribed case recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecipe {
    pub id: String,
    pub kind: StepKind,
    pub m: i64,
    /// Genus parameter of the `RO`/`RT` chains; 0 there, unused for the
    /// degree-linked chains.
    pub g: i64,
    /// Identifier of the predecessor case, when any.
    pub base: Option<String>,
    pub base_d: i64,
    pub base_g: i64,
    /// Residual points carried in by the predecessor.
    pub base_points: i64,
    pub lines: Vec<LineGroup>,
    pub curves: Vec<CurveGroup>,
    pub nilpotents: i64,
    pub extra: ExtraPoints,
    pub claimed_twist: Option<(i64, i64)>,
    pub claimed_lemma: Option<LemmaRef>,
    /// Degree/genus the source claims for the result, when printed.
    pub claimed_target: Option<(i64, i64)>,
    pub suspected_typo: Option<String>,
    pub ambiguous: Option<String>,
    pub note: Option<String>,
    pub source: String,
}

impl StepRecipe {
    fn line_count(&self, ruling: Ruling) -> i64 {
        self.lines.iter().filter(|l| l.ruling == ruling).map(|l| l.count).sum()
    }

    /// Total bidegree of the added components.
    fn added_class(&self) -> (i64, i64) {
        let mut p = 0;
        let mut q = 0;
        for l in &self.lines {
            let (a, b) = l.ruling.class();
            p += l.count * a;
            q += l.count * b;
        }
        for c in &self.curves {
            p += c.count * c.class.0;
            q += c.count * c.class.1;
        }
        (p, q)
    }

    fn secancy_total(&self) -> i64 {
        self.lines.iter().map(|l| l.count * l.secancy).sum::<i64>()
            + self.curves.iter().map(|c| c.count * c.secancy).sum::<i64>()
    }

    /// Pairwise crossings among the added components on the quadric:
    /// classes `(p,q)` and `(p',q')` meet in `pq' + qp'` points.
    fn crossings(&self) -> i64 {
        let mut classes: Vec<(i64, i64)> = Vec::new();
        for l in &self.lines {
            for _ in 0..l.count {
                classes.push(l.ruling.class());
            }
        }
        for c in &self.curves {
            for _ in 0..c.count {
                classes.push(c.class);
            }
        }
        let mut total = 0;
        for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                let (p, q) = classes[i];
                let (p2, q2) = classes[j];
                total += p * q2 + q * p2;
            }
        }
        total
    }

    /// Euler characteristic of a component of class `(p,q)`:
    /// `1 - (p-1)(q-1)`.
    fn component_chi(&self) -> i64 {
        let lines: i64 = self.lines.iter().map(|l| l.count).sum();
        let curves: i64 = self
            .curves
            .iter()
            .map(|c| c.count * (1 - (c.class.0 - 1) * (c.class.1 - 1)))
            .sum();
        lines + curves
    }

    fn component_count(&self) -> i64 {
        self.lines.iter().map(|l| l.count).sum::<i64>()
            + self.curves.iter().map(|c| c.count).sum::<i64>()
    }
}

/// Verdict of one balance check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Flag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub verdict: Verdict,
}

impl Check {
    fn eq(name: &str, lhs: i64, rhs: i64) -> Self {
        let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Flag };
        Check { name: name.to_string(), lhs, rhs, verdict }
    }

    fn bool(name: &str, ok: bool) -> Self {
        Check {
            name: name.to_string(),
            lhs: ok as i64,
            rhs: 1,
            verdict: if ok { Verdict::Pass } else { Verdict::Flag },
        }
    }
}

/// Per-recipe outcome: every check with both sides, plus free-text notes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub recipe_id: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl BalanceReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }
}

/// Degree of the union: each added component contributes `p + q`.
pub fn degree_after(recipe: &StepRecipe) -> i64 {
    let (p, q) = recipe.added_class();
    recipe.base_d + p + q
}

/// Euler characteristic and genus after the step: component Euler numbers,
/// minus one per incidence (secancy points plus pairwise crossings), plus
/// one per nilpotent.
pub fn chi_after(recipe: &StepRecipe) -> (i64, i64) {
    let incidences = recipe.secancy_total() + recipe.crossings();
    let base_chi = if recipe.base_d == 0 && recipe.component_count() > 0 {
        // no incoming curve: the union starts from the added components
        0
    } else {
        1 - recipe.base_g
    };
    let chi = base_chi + recipe.component_chi() - incidences + recipe.nilpotents;
    (chi, 1 - chi)
}

/// Twist of the relevant bundle on the quadric after removing the added
/// divisor: cotangent side starts at `(m+1, m+1)`, tangent side at
/// `(m-2, m-2)`.
pub fn trace_twist(kind: StepKind, m: i64, n10: i64, n01: i64) -> (i64, i64) {
    let start = if kind.is_cotangent() { m + 1 } else { m - 2 };
    (start - n10, start - n01)
}

/// Number of points in a net of type `(a, b; t)`.
pub fn net_cardinality(p: NetParams) -> i64 {
    (p.a - 1) * p.b + p.t
}

/// Evaluate the hypothesis of one quadric vanishing lemma: the printed
/// window inequalities (square brackets are floors) together with the
/// `3·card + 3u <= h0 <= 3·card + 3w` sandwich against the filtration
/// value.
// comparisons spelled exactly as the printed windows
#[allow(clippy::int_plus_one)]
pub fn lemma_hypothesis(
    which: LemmaId,
    x: i64,
    y: i64,
    net: Option<NetParams>,
    u: i64,
    w: i64,
) -> bool {
    let h0 = if matches!(which, LemmaId::L3_1 | LemmaId::L3_6 | LemmaId::L3_8) {
        h0_omega_quadric(x, y).h0
    } else {
        h0_tpi_quadric(x, y).h0
    };
    let card = match which {
        LemmaId::L3_1 | LemmaId::L3_2 => 0,
        _ => match net {
            Some(p) => {
                if p.a < 1 || p.t < 1 || p.t > p.b {
                    return false;
                }
                net_cardinality(p)
            }
            None => return false,
        },
    };
    let window = match which {
        LemmaId::L3_1 => y >= 1 && y <= x,
        LemmaId::L3_2 => y >= 0 && y <= x,
        LemmaId::L3_6 | LemmaId::L3_7 | LemmaId::L3_8 | LemmaId::L3_9 => {
            let p = net.expect("checked above");
            match which {
                LemmaId::L3_6 => {
                    x >= 1 + 2 * ((p.a + 1) / 2) && y >= p.b + 2 * ((p.a - 1) / 2) + 1
                }
                LemmaId::L3_7 => {
                    x >= -1 + 2 * ((p.a + 1) / 2) && y >= p.b + 2 * ((p.a - 1) / 2) - 1
                }
                LemmaId::L3_8 => x >= 1 + 2 * ((p.a + 1) / 2) && y >= p.b + 1,
                LemmaId::L3_9 => x >= -1 + 2 * ((p.a + 1) / 2) && y >= p.b - 1,
                _ => unreachable!(),
            }
        }
    };
    window && 3 * (card + u) <= h0 && h0 <= 3 * (card + w)
}

/// Both sides of the ambient balance identity for a chain at `m` (genus `g`
/// for the fixed-genus chains): condition count of the starred data against
/// the twist dimension. On computed sequences the two sides agree
/// identically.
pub fn p3_balance(kind: StepKind, m: i64, g: i64) -> Result<(i64, i64)> {
    Ok(match kind {
        StepKind::HO => {
            let r = solve_family(m, Family::DeltaOmega)?;
            let s = r.star.expect("delta family has stars");
            ((3 * m - 4) * s.base + 12 + 3 * s.rem, h0_omega_twist_m(m)?)
        }
        StepKind::HT => {
            let r = solve_family(m, Family::DeltaTpi)?;
            let s = r.star.expect("delta family has stars");
            ((3 * m - 5) * s.base + 12 + 3 * s.rem, h0_tpi_twist_m(m)?)
        }
        StepKind::RO => {
            let r = solve_genus_family(m, g, GenusFamily::OmegaGenus)?;
            (
                (3 * m - 1) * r.star.base + 3 * (1 - g) + 3 * r.star.rem,
                h0_omega_twist_m(m)?,
            )
        }
        StepKind::RT => {
            let r = solve_genus_family(m, g, GenusFamily::TpiGenus)?;
            (
                (3 * m - 2) * r.star.base + 3 * (1 - g) + 3 * r.star.rem,
                h0_tpi_twist_m(m)?,
            )
        }
    })
}

/// Star remainder of the chain at `m`: the new residual point count.
fn new_star_points(kind: StepKind, m: i64, g: i64) -> Result<i64> {
    Ok(match kind {
        StepKind::HO => solve_family(m, Family::DeltaOmega)?.star.expect("stars").rem,
        StepKind::HT => solve_family(m, Family::DeltaTpi)?.star.expect("stars").rem,
        StepKind::RO => solve_genus_family(m, g, GenusFamily::OmegaGenus)?.star.rem,
        StepKind::RT => solve_genus_family(m, g, GenusFamily::TpiGenus)?.star.rem,
    })
}

/// Target degree of the chain at `m` on computed sequences.
pub fn computed_target(kind: StepKind, m: i64, g: i64) -> Result<(i64, i64)> {
    let d = match kind {
        StepKind::HO => solve_family(m, Family::DeltaOmega)?.star.expect("stars").base,
        StepKind::HT => solve_family(m, Family::DeltaTpi)?.star.expect("stars").base,
        StepKind::RO => solve_genus_family(m, g, GenusFamily::OmegaGenus)?.star.base,
        StepKind::RT => solve_genus_family(m, g, GenusFamily::TpiGenus)?.star.base,
    };
    let genus = if kind.is_degree_linked() { d - 3 } else { g };
    Ok((d, genus))
}

/// Outcome of the quadric-level point budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadricBudget {
    /// Trace points of the incoming curve not absorbed by added lines.
    pub residual_trace: i64,
    pub points_conditions: i64,
    pub h0_q: i64,
    pub remainder: i64,
    pub dims: CohomDims,
}

/// Point budget on the quadric: three conditions per leftover trace point,
/// new starred point, and extra point, against the filtration `h0` at the
/// trace twist. Nilpotents at crossings impose no trace conditions here;
/// the companion count with one condition each is reported by the caller.
pub fn quadric_budget(recipe: &StepRecipe) -> Result<QuadricBudget> {
    let residual_trace = 2 * recipe.base_d - recipe.secancy_total();
    if residual_trace < 0 {
        return Err(Error::MalformedRecipe {
            id: recipe.id.clone(),
            msg: format!(
                "secancies ({}) exceed the {} trace points of the incoming curve",
                recipe.secancy_total(),
                2 * recipe.base_d
            ),
        });
    }
    let (p, q) = recipe.added_class();
    let start = if recipe.kind.is_cotangent() { recipe.m + 1 } else { recipe.m - 2 };
    let (x, y) = (start - p, start - q);
    let dims = if recipe.kind.is_cotangent() {
        h0_omega_quadric(x, y)
    } else {
        h0_tpi_quadric(x, y)
    };
    let stars = new_star_points(recipe.kind, recipe.m, recipe.g)?;
    let points_conditions = 3 * (residual_trace + stars + recipe.extra.count);
    Ok(QuadricBudget {
        residual_trace,
        points_conditions,
        h0_q: dims.h0,
        remainder: dims.h0 - points_conditions,
        dims,
    })
}

/// Window search for distributing `count` leftover points on lines, gap =
/// the degree jump of the chain. Returns the first index whose window
/// contains `count`, with the per-line cardinalities, or `None`.
pub fn layout_points(kind: StepKind, count: i64, gap: i64) -> Option<(i64, Vec<i64>)> {
    if count < 0 || gap < 0 {
        return None;
    }
    if kind.is_degree_linked() {
        // w = 0 clause: everything on one line
        if count <= gap - 2 {
            let sizes = if count == 0 { vec![] } else { vec![count] };
            return Some((0, sizes));
        }
        for w in 1..=18 {
            let full = gap - w - 4;
            if w * (gap - w - 2) <= count && count <= (w + 1) * full {
                let mut sizes = vec![full; w as usize];
                sizes.push(count - w * full);
                return Some((w, sizes));
            }
        }
        None
    } else {
        for z in 0..=20 {
            let full = gap - z - 1;
            if z * full <= count && count <= (z + 1) * full {
                let mut sizes = vec![full; z as usize];
                sizes.push(count - z * full);
                if count == 0 {
                    sizes.clear();
                }
                return Some((z, sizes));
            }
        }
        None
    }
}

/// A degree/genus class, the unit the composition rules act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub d: i64,
    pub g: i64,
}

/// A rational tail attached through the stated number of extra nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComposePiece {
    /// Line meeting the curve in `u + 1` points, `0 <= u <= 2`.
    Line(i64),
    /// Smooth conic meeting in `v + 1` points, `0 <= v <= 3`.
    Conic(i64),
    /// Rational normal cubic meeting in `w + 1` points, `0 <= w <= 5`.
    RationalNormalCubic(i64),
}

/// Attach a rational tail: `(d+1, g+u)`, `(d+2, g+v)` or `(d+3, g+w)`.
pub fn compose_curve(base: CurveClass, piece: ComposePiece) -> Result<CurveClass> {
    let (dd, gg, what, v, max) = match piece {
        ComposePiece::Line(u) => (1, u, "line nodes u", u, 2),
        ComposePiece::Conic(v) => (2, v, "conic nodes v", v, 3),
        ComposePiece::RationalNormalCubic(w) => (3, w, "cubic nodes w", w, 5),
    };
    if v < 0 || v > max {
        return Err(Error::CompositionRange { what, v });
    }
    Ok(CurveClass { d: base.d + dd, g: base.g + gg })
}

/// Run every applicable check on a recipe and collect the report. Checks
/// appear in a fixed order; identical recipes produce byte-identical
/// reports.
pub fn verify_step(recipe: &StepRecipe) -> BalanceReport {
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    if let Some(t) = &recipe.suspected_typo {
        notes.push(format!("suspected typo: {t}"));
    }
    if let Some(a) = &recipe.ambiguous {
        notes.push(format!("ambiguous: {a}"));
    }
    if let Some(n) = &recipe.note {
        notes.push(n.clone());
    }

    let target = match computed_target(recipe.kind, recipe.m, recipe.g) {
        Ok(t) => t,
        Err(e) => {
            checks.push(Check::bool("malformed", false));
            notes.push(e.to_string());
            return BalanceReport { recipe_id: recipe.id.clone(), checks, notes };
        }
    };

    checks.push(Check::eq("degree", degree_after(recipe), target.0));
    if let Some((td, _)) = recipe.claimed_target {
        checks.push(Check::eq("degree_printed", degree_after(recipe), td));
    }
    let (_, genus) = chi_after(recipe);
    checks.push(Check::eq("genus", genus, target.1));
    if let Some((td, _)) = recipe.claimed_target {
        let tg = if recipe.kind.is_degree_linked() { td - 3 } else { recipe.g };
        checks.push(Check::eq("genus_printed", genus, tg));
    }

    let (n10, n01) = (recipe.line_count(Ruling::R10), recipe.line_count(Ruling::R01));
    let computed_twist = {
        let (p, q) = recipe.added_class();
        let start = if recipe.kind.is_cotangent() { recipe.m + 1 } else { recipe.m - 2 };
        (start - p, start - q)
    };
    if recipe.curves.is_empty() {
        debug_assert_eq!(
            computed_twist,
            trace_twist(recipe.kind, recipe.m, n10, n01)
        );
    }
    if let Some((cx, cy)) = recipe.claimed_twist {
        checks.push(Check::eq("twist_x", computed_twist.0, cx));
        checks.push(Check::eq("twist_y", computed_twist.1, cy));
    }

    match p3_balance(recipe.kind, recipe.m, recipe.g) {
        Ok((lhs, rhs)) => checks.push(Check::eq("p3_balance", lhs, rhs)),
        Err(e) => {
            checks.push(Check::bool("p3_balance", false));
            notes.push(e.to_string());
        }
    }

    match quadric_budget(recipe) {
        Ok(b) => {
            checks.push(Check::eq("quadric_budget", b.points_conditions, b.h0_q));
            notes.push(format!(
                "quadric budget: residual trace {}, conditions {}, h0 {}, remainder {}",
                b.residual_trace, b.points_conditions, b.h0_q, b.remainder
            ));
            if recipe.nilpotents != 0 {
                let with_nu = b.points_conditions + 3 * recipe.nilpotents;
                notes.push(format!(
                    "variant with one trace point per nilpotent: conditions {}, remainder {}",
                    with_nu,
                    b.h0_q - with_nu
                ));
            }
            if !b.dims.exact {
                notes.push("trace twist h0 is an interval, lower end used".to_string());
            }
        }
        Err(e) => {
            checks.push(Check::bool("malformed", false));
            notes.push(e.to_string());
        }
    }

    if let Some(lemma) = recipe.claimed_lemma {
        let (x, y) = lemma.xy.unwrap_or(computed_twist);
        let budget = quadric_budget(recipe).ok();
        let stars = new_star_points(recipe.kind, recipe.m, recipe.g).unwrap_or(0);
        let net_card = lemma.net.map(net_cardinality).unwrap_or(0);
        let general = budget
            .map(|b| (b.residual_trace + stars + recipe.extra.count - net_card).max(0))
            .unwrap_or(0);
        let ok = lemma_hypothesis(lemma.id, x, y, lemma.net, general, general);
        checks.push(Check::bool("lemma_hypothesis", ok));
        notes.push(format!(
            "lemma check at ({x},{y}) with net card {net_card} and {general} general points"
        ));
    }

    BalanceReport { recipe_id: recipe.id.clone(), checks, notes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ho12() -> StepRecipe {
        StepRecipe {
            id: "HO12".into(),
            kind: StepKind::HO,
            m: 12,
            g: 0,
            base: Some("HO10".into()),
            base_d: 28,
            base_g: 25,
            base_points: 20,
            lines: vec![
                LineGroup { count: 3, ruling: Ruling::R10, secancy: 2 },
                LineGroup { count: 1, ruling: Ruling::R10, secancy: 1 },
                LineGroup { count: 7, ruling: Ruling::R01, secancy: 1 },
            ],
            curves: vec![],
            nilpotents: 20,
            extra: ExtraPoints { count: 0, placement: Placement::Free },
            claimed_twist: Some((9, 6)),
            claimed_lemma: Some(LemmaRef { id: LemmaId::L3_1, net: None, xy: None }),
            claimed_target: Some((39, 36)),
            suspected_typo: None,
            ambiguous: None,
            note: None,
            source: "6.16".into(),
        }
    }

    #[test]
    fn degree_after_fixtures() {
        assert_eq!(degree_after(&ho12()), 39);
        let mut r = ho12();
        r.lines.clear();
        assert_eq!(degree_after(&r), 28);
        // synthetic degree arithmetic: base 9 plus 6 lines
        let mut r = ho12();
        r.base_d = 9;
        r.lines = vec![
            LineGroup { count: 1, ruling: Ruling::R10, secancy: 1 },
            LineGroup { count: 5, ruling: Ruling::R01, secancy: 1 },
        ];
        assert_eq!(degree_after(&r), 15);
    }

    #[test]
    fn chi_after_fixtures() {
        // two crossing lines, nothing else: chi 1, genus 0
        let r = StepRecipe {
            base_d: 0,
            base_g: 0,
            lines: vec![
                LineGroup { count: 1, ruling: Ruling::R10, secancy: 0 },
                LineGroup { count: 1, ruling: Ruling::R01, secancy: 0 },
            ],
            nilpotents: 0,
            ..ho12()
        };
        assert_eq!(chi_after(&r), (1, 0));

        // the main fixture: chi -35, genus 36
        assert_eq!(chi_after(&ho12()), (-35, 36));

        // bare grid: connected arithmetic genus ab - a - b + 1
        let r = StepRecipe {
            base_d: 0,
            base_g: 0,
            lines: vec![
                LineGroup { count: 4, ruling: Ruling::R10, secancy: 0 },
                LineGroup { count: 7, ruling: Ruling::R01, secancy: 0 },
            ],
            nilpotents: 0,
            ..ho12()
        };
        assert_eq!(chi_after(&r).1, 18);
    }

    #[test]
    fn trace_twist_fixtures() {
        assert_eq!(trace_twist(StepKind::HO, 8, 2, 2), (7, 7));
        assert_eq!(trace_twist(StepKind::HO, 12, 4, 7), (9, 6));
        assert_eq!(trace_twist(StepKind::HT, 8, 3, 2), (3, 4));
    }

    #[test]
    fn trace_twist_is_linear_in_line_counts() {
        for k in 0..10 {
            let (x0, y0) = trace_twist(StepKind::RO, 20, 3, 4);
            let (x1, y1) = trace_twist(StepKind::RO, 20, 3, 4 + k);
            assert_eq!(x1, x0);
            assert_eq!(y1, y0 - k);
        }
    }

    #[test]
    fn net_cardinalities() {
        assert_eq!(net_cardinality(NetParams { a: 2, b: 6, t: 6 }), 12);
        assert_eq!(net_cardinality(NetParams { a: 1, b: 9, t: 4 }), 4);
        assert_eq!(net_cardinality(NetParams { a: 3, b: 11, t: 6 }), 28);
    }

    #[test]
    fn lemma_hypothesis_fixtures() {
        // window-only behaviour probed with a slack sandwich
        let h = h0_omega_quadric(9, 14).h0;
        assert!(lemma_hypothesis(
            LemmaId::L3_6,
            9,
            14,
            Some(NetParams { a: 3, b: 11, t: 6 }),
            0,
            h / 3,
        ));
        let h = h0_omega_quadric(10, 6).h0;
        assert!(!lemma_hypothesis(
            LemmaId::L3_8,
            10,
            6,
            Some(NetParams { a: 2, b: 6, t: 3 }),
            0,
            h / 3,
        ));
        let h = h0_tpi_quadric(8, 7).h0;
        assert!(lemma_hypothesis(
            LemmaId::L3_9,
            8,
            7,
            Some(NetParams { a: 7, b: 6, t: 6 }),
            0,
            h / 3,
        ));
    }

    #[test]
    fn p3_balance_fixtures() {
        assert_eq!(p3_balance(StepKind::HO, 12, 0).unwrap(), (1260, 1260));
        assert_eq!(p3_balance(StepKind::HT, 2, 0).unwrap(), (15, 15));
        assert_eq!(p3_balance(StepKind::HO, 10, 0).unwrap(), (780, 780));
    }

    #[test]
    fn p3_balance_printed_row_differs_at_ten() {
        // with the printed table row (28, 20) the check would read 800 vs 780
        assert_eq!(26 * 28 + 12 + 3 * 20, 800);
        assert_eq!(h0_omega_twist_m(10).unwrap(), 780);
    }

    #[test]
    fn quadric_budget_fixture() {
        let b = quadric_budget(&ho12()).unwrap();
        assert_eq!(b.residual_trace, 42);
        assert_eq!(b.points_conditions, 126);
        assert_eq!(b.h0_q, 146);
        assert_eq!(b.remainder, 20); // equals the recipe's nilpotent count
    }

    #[test]
    fn quadric_budget_rejects_negative_trace() {
        let mut r = ho12();
        r.base_d = 2;
        assert!(quadric_budget(&r).is_err());
    }

    #[test]
    fn quadric_budget_empty_recipe_on_trivial_twist() {
        let r = StepRecipe {
            m: 0,
            base_d: 0,
            base_g: 0,
            base_points: 0,
            lines: vec![],
            nilpotents: 0,
            extra: ExtraPoints { count: 0, placement: Placement::Free },
            kind: StepKind::RO,
            g: 0,
            ..ho12()
        };
        // m = 0 has no sequence context; use m = 2 shifted so the twist is (1,1)
        let r = StepRecipe { m: 2, lines: vec![
            LineGroup { count: 2, ruling: Ruling::R10, secancy: 0 },
            LineGroup { count: 2, ruling: Ruling::R01, secancy: 0 },
        ], ..r };
        let b = quadric_budget(&r).unwrap();
        assert_eq!(b.h0_q, 0); // (Omega|Q)(1,1) has no sections
    }

    #[test]
    fn layout_point_windows() {
        assert_eq!(layout_points(StepKind::HO, 5, 10), Some((0, vec![5])));
        assert_eq!(layout_points(StepKind::HO, 20, 10), None);
        assert_eq!(layout_points(StepKind::HO, 0, 7), Some((0, vec![])));
        // w >= 1 block sizes are gap - w - 4 with the tail remainder
        let (w, sizes) = layout_points(StepKind::HO, 18, 12).unwrap();
        assert!(w >= 1);
        assert_eq!(sizes.iter().sum::<i64>(), 18);
        assert!(sizes.iter().all(|&s| s <= 12 - w - 4));
        // fixed-genus window: block size is gap - z - 1
        let (z, sizes) = layout_points(StepKind::RO, 20, 9).unwrap();
        assert_eq!(sizes.iter().sum::<i64>(), 20);
        let cap = 9 - z - 1;
        assert!(sizes.iter().all(|&s| s <= cap));
    }

    #[test]
    fn compose_rules() {
        let c = CurveClass { d: 10, g: 2 };
        assert_eq!(
            compose_curve(c, ComposePiece::Line(1)).unwrap(),
            CurveClass { d: 11, g: 3 }
        );
        assert_eq!(
            compose_curve(c, ComposePiece::Line(0)).unwrap(),
            CurveClass { d: 11, g: 2 }
        );
        assert_eq!(
            compose_curve(c, ComposePiece::RationalNormalCubic(5)).unwrap(),
            CurveClass { d: 13, g: 7 }
        );
        assert!(compose_curve(c, ComposePiece::Line(3)).is_err());
        assert!(compose_curve(c, ComposePiece::Conic(-1)).is_err());
    }

    #[test]
    fn compose_line_matches_chi_arithmetic() {
        // a (u+1)-secant line off the quadric: degree +1, genus +u
        for u in 0..=2 {
            let base = CurveClass { d: 17, g: 4 };
            let composed = compose_curve(base, ComposePiece::Line(u)).unwrap();
            let r = StepRecipe {
                base_d: base.d,
                base_g: base.g,
                lines: vec![LineGroup { count: 1, ruling: Ruling::R10, secancy: u + 1 }],
                nilpotents: 0,
                ..ho12()
            };
            assert_eq!(degree_after(&r), composed.d);
            assert_eq!(chi_after(&r).1, composed.g);
        }
    }

    #[test]
    fn verify_step_fixture_report() {
        let report = verify_step(&ho12());
        let get = |name: &str| report.checks.iter().find(|c| c.name == name).unwrap();
        assert_eq!(get("degree").lhs, 39);
        assert_eq!(get("degree").verdict, Verdict::Pass);
        assert_eq!(get("genus").lhs, 36);
        assert_eq!(get("genus").verdict, Verdict::Pass);
        assert_eq!(get("twist_x").verdict, Verdict::Pass);
        assert_eq!(get("twist_y").verdict, Verdict::Pass);
        assert_eq!(get("p3_balance").verdict, Verdict::Pass);
        assert_eq!(get("quadric_budget").verdict, Verdict::Flag);
        assert_eq!(get("quadric_budget").rhs - get("quadric_budget").lhs, 20);
    }

    #[test]
    fn verify_step_is_deterministic() {
        let a = format!("{:?}", verify_step(&ho12()));
        let b = format!("{:?}", verify_step(&ho12()));
        assert_eq!(a, b);
    }
}
