//! Sections of the projection from sequences onto classes, and the
//! derivative they induce on classes.
//!
//! A section picks one representative sequence per class. Differentiating
//! that representative term by term and projecting back gives the sectional
//! derivative, which in general depends on the section chosen.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{bernstein_approx, chebyshev_approx, differentiate, eval, DiffResult, Expr, Func};
use crate::hyperspace::{
    embed_stable, equivalent, hyper_add, hyper_scale, hyper_sub, null_check, project, same_family, seq_add,
    seq_scale, seq_sub, Decision, FunSeq, HyperElement, TermSource, Verdict, Window, Witness,
};
use crate::seminorm::{seminorm_value, Probe, SeminormFamily};
use crate::{Error, Result};

/// Largest polynomial degree used by the smoothing section.
pub const SMOOTHING_CAP: usize = 16384;

/// Polynomial used for each smoothed term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approximant {
    /// Adaptive Chebyshev interpolation. A term it does not resolve is
    /// regularised if it contains `abs` of a function of `x`
    /// (`abs(u) -> (u^2 + 4^-i)^(1/2)`, within `2^-i` of the original), and
    /// otherwise replaced by its Bernstein polynomial of the scheduled degree.
    Auto,
    /// Bernstein polynomial of the scheduled degree.
    Bernstein,
}

#[derive(Debug, Clone)]
pub struct BasisEntry {
    pub label: String,
    pub class: HyperElement,
    pub rep: FunSeq,
}

#[derive(Debug, Clone)]
pub enum Section {
    /// The stored representative.
    Rep,
    /// Linear extension of a choice of representatives on a finite basis.
    /// Defined on elements presented as combinations of the basis labels.
    BasisLinear(Vec<BasisEntry>),
    /// Term `i` is replaced by a polynomial approximant on `[-c i, c i]` of
    /// degree at most `min(2^i, cap)`.
    Smoothing {
        scale: f64,
        cap: usize,
        approximant: Approximant,
    },
    /// `base`, except on classes equivalent to an override class.
    Patched {
        base: Box<Section>,
        overrides: Vec<(HyperElement, FunSeq)>,
        window: Window,
    },
    /// `F -> a * r(F / a)`.
    ConjugateMt { a: f64, inner: Box<Section> },
    /// `F -> r(F - e) + e`.
    ConjugateAd { e: Expr, inner: Box<Section> },
}

impl Section {
    /// Validates the basis: labels are distinct, all classes share a family,
    /// the chosen representatives lie in their classes, and the classes are
    /// pairwise non-equivalent.
    pub fn basis_linear(entries: Vec<BasisEntry>, w: &Window) -> Result<Section> {
        for (j, a) in entries.iter().enumerate() {
            if !equivalent(&a.rep, &a.class.rep, &a.class.family, w)?.holds() {
                return Err(Error::InvalidArgument(format!(
                    "representative {} is not in the class of basis element `{}`",
                    a.rep, a.label
                )));
            }
            for b in &entries[..j] {
                if a.label == b.label {
                    return Err(Error::InvalidArgument(format!(
                        "duplicate basis label `{}`",
                        a.label
                    )));
                }
                same_family(&a.class, &b.class)?;
                let d = equivalent(&a.class.rep, &b.class.rep, &a.class.family, w)?;
                if !d.fails() {
                    return Err(Error::InvalidArgument(format!(
                        "basis elements `{}` and `{}` are not separated ({})",
                        b.label, a.label, d.verdict
                    )));
                }
            }
        }
        Ok(Section::BasisLinear(entries))
    }

    pub fn smoothing(scale: f64, cap: usize, approximant: Approximant) -> Result<Section> {
        if !(scale > 0.0 && scale.is_finite()) || cap == 0 {
            return Err(Error::InvalidArgument(format!(
                "smoothing needs a positive scale and cap, got scale={scale}, cap={cap}"
            )));
        }
        Ok(Section::Smoothing {
            scale,
            cap,
            approximant,
        })
    }

    /// The default smoothing section: intervals `[-i, i]`, cap `2^14`.
    pub fn default_smoothing() -> Section {
        Section::Smoothing {
            scale: 1.0,
            cap: SMOOTHING_CAP,
            approximant: Approximant::Auto,
        }
    }

    pub fn patched(base: Section, overrides: Vec<(HyperElement, FunSeq)>, window: Window) -> Section {
        Section::Patched {
            base: Box::new(base),
            overrides,
            window,
        }
    }
}

impl BasisEntry {
    pub fn new(label: impl Into<String>, class: HyperElement, rep: FunSeq) -> BasisEntry {
        BasisEntry {
            label: label.into(),
            class,
            rep,
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::Rep => f.write_str("rep"),
            Section::BasisLinear(entries) => {
                let labels: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
                write!(f, "basis-linear[{}]", labels.join(", "))
            }
            Section::Smoothing {
                scale,
                cap,
                approximant,
            } => {
                let kind = if *approximant == Approximant::Auto {
                    "auto"
                } else {
                    "bernstein"
                };
                write!(f, "smoothing(scale={scale}, cap={cap}, {kind})")
            }
            Section::Patched { base, overrides, .. } => {
                write!(f, "patched({base}; {} overrides)", overrides.len())
            }
            Section::ConjugateMt { a, inner } => write!(f, "mt_{a}({inner})"),
            Section::ConjugateAd { e, inner } => write!(f, "ad_{{{e}}}({inner})"),
        }
    }
}

/// `mt_a ∘ r ∘ mt_{1/a}`.
pub fn conjugate_mt(a: f64, r: Section) -> Result<Section> {
    if a == 0.0 {
        return Err(Error::ZeroScalar);
    }
    Ok(Section::ConjugateMt {
        a,
        inner: Box::new(r),
    })
}

/// `ad_e ∘ r ∘ ad_{-e}` for a function `e` of `x`.
pub fn conjugate_ad(e: Expr, r: Section) -> Result<Section> {
    embed_stable(&e)?;
    Ok(Section::ConjugateAd {
        e,
        inner: Box::new(r),
    })
}

/// `r(F)`, a representative sequence of `F`.
pub fn section_apply(r: &Section, f: &HyperElement) -> Result<FunSeq> {
    match r {
        Section::Rep => Ok(f.rep.clone()),
        Section::BasisLinear(entries) => {
            let Some(terms) = &f.combination else {
                return Err(Error::OutOfDomain(format!("{f} is not presented in the basis")));
            };
            let mut out = FunSeq::zero();
            for (label, c) in terms {
                let entry = entries
                    .iter()
                    .find(|e| &e.label == label)
                    .ok_or_else(|| Error::OutOfDomain(format!("`{label}` is not a basis label")))?;
                same_family(f, &entry.class)?;
                out = seq_add(&out, &seq_scale(*c, &entry.rep));
            }
            Ok(out)
        }
        Section::Smoothing {
            scale,
            cap,
            approximant,
        } => Ok(FunSeq::Generated(Arc::new(Smoothed {
            rep: f.rep.clone(),
            scale: *scale,
            cap: *cap,
            approximant: *approximant,
            cache: Mutex::new(BTreeMap::new()),
        }))),
        Section::Patched {
            base,
            overrides,
            window,
        } => {
            for (class, seq) in overrides {
                if class.family == f.family && equivalent(&f.rep, &class.rep, &f.family, window)?.holds() {
                    return Ok(seq.clone());
                }
            }
            section_apply(base, f)
        }
        Section::ConjugateMt { a, inner } => {
            Ok(seq_scale(*a, &section_apply(inner, &hyper_scale(1.0 / a, f))?))
        }
        Section::ConjugateAd { e, inner } => {
            let shift = project(FunSeq::Expr(e.clone()), &f.family);
            let inner_rep = section_apply(inner, &hyper_sub(f, &shift)?)?;
            Ok(seq_add(&inner_rep, &shift.rep))
        }
    }
}

/// `r(F)` for the smoothing section.
pub fn smoothing_section_build(
    f: &HyperElement,
    scale: f64,
    cap: usize,
    approximant: Approximant,
) -> Result<FunSeq> {
    section_apply(&Section::smoothing(scale, cap, approximant)?, f)
}

#[derive(Debug)]
struct Smoothed {
    rep: FunSeq,
    scale: f64,
    cap: usize,
    approximant: Approximant,
    cache: Mutex<BTreeMap<u64, Expr>>,
}

impl Smoothed {
    fn degree(&self, i: u64) -> usize {
        if i >= 63 {
            self.cap
        } else {
            (1usize << i).min(self.cap)
        }
    }

    fn build(&self, i: u64) -> Result<Expr> {
        let term = self.rep.term(i)?;
        let half = self.scale * i as f64;
        let degree = self.degree(i);
        if self.approximant == Approximant::Auto {
            if let Some(p) = chebyshev_approx(&term, i, -half, half, degree)? {
                return Ok(Expr::Poly(Arc::new(p)));
            }
            if differentiate(&term).derivative().is_none() {
                let soft = soften_abs(&term, &Expr::real(0.25f64.powi(i.min(500) as i32)));
                return Ok(soft.subst_n(i));
            }
        }
        bernstein_approx(&term, i, -half, half, degree)
    }
}

impl TermSource for Smoothed {
    fn term(&self, i: u64) -> Result<Expr> {
        if let Some(t) = self.cache.lock().unwrap().get(&i) {
            return Ok(t.clone());
        }
        let t = self.build(i)?;
        self.cache.lock().unwrap().insert(i, t.clone());
        Ok(t)
    }

    fn describe(&self) -> String {
        format!("smooth{}", self.rep)
    }

    fn differentiable_from(&self) -> Option<u64> {
        Some(1)
    }
}

/// Replaces every `abs(u)` with `u` depending on `x` by `(u^2 + d2)^(1/2)`.
fn soften_abs(e: &Expr, d2: &Expr) -> Expr {
    let s = |a: &Expr| soften_abs(a, d2);
    match e {
        Expr::Const(_) | Expr::Pi | Expr::X | Expr::N | Expr::Poly(_) => e.clone(),
        Expr::Call(Func::Abs, u) if u.has_x() => Expr::pow(
            Expr::add(Expr::pow(s(u), Expr::int(2)), d2.clone()),
            Expr::ratio(1, 2),
        ),
        Expr::Call(f, u) => Expr::call(*f, s(u)),
        Expr::Neg(a) => Expr::neg(s(a)),
        Expr::Add(a, b) => Expr::add(s(a), s(b)),
        Expr::Sub(a, b) => Expr::sub(s(a), s(b)),
        Expr::Mul(a, b) => Expr::mul(s(a), s(b)),
        Expr::Div(a, b) => Expr::div(s(a), s(b)),
        Expr::Pow(a, b) => Expr::pow(s(a), s(b)),
    }
}

/// A termwise derivative: zero below `cutoff`, the symbolic derivative from
/// `cutoff` on.
#[derive(Debug, Clone)]
pub struct LiftedDerivative {
    pub seq: FunSeq,
    pub cutoff: u64,
}

#[derive(Debug)]
struct Derived {
    inner: FunSeq,
    cutoff: u64,
}

impl TermSource for Derived {
    fn term(&self, i: u64) -> Result<Expr> {
        if i < self.cutoff {
            return Ok(Expr::zero());
        }
        differentiate(&self.inner.term(i)?).into_result()
    }

    fn describe(&self) -> String {
        format!("d/dx {}", self.inner)
    }

    fn differentiable_from(&self) -> Option<u64> {
        // Differentiation never introduces `abs`.
        Some(1)
    }
}

fn term_differentiable(f: &FunSeq, i: u64) -> Result<bool> {
    Ok(differentiate(&f.term(i)?).derivative().is_some())
}

/// Termwise derivative of `f`, defined from the first index `n` after which
/// every term is differentiable; terms before `n` become zero.
///
/// Fails with [`Error::UndefinedDerivative`] when no such `n <= max_scan`
/// exists. Generated sequences without a differentiability guarantee are
/// scanned up to `max_scan`.
pub fn lift_partial_derivative(f: &FunSeq, max_scan: u64) -> Result<LiftedDerivative> {
    let undefined = Error::UndefinedDerivative { scanned: max_scan };
    let cutoff = match f.differentiable_from() {
        Some(k) => {
            let mut cutoff = k.max(1);
            while cutoff > 1 && term_differentiable(f, cutoff - 1)? {
                cutoff -= 1;
            }
            cutoff
        }
        None if matches!(f, FunSeq::Generated(_)) => {
            let mut last_bad = 0;
            for i in 1..=max_scan {
                if !term_differentiable(f, i)? {
                    last_bad = i;
                }
            }
            last_bad + 1
        }
        None => return Err(undefined),
    };
    if cutoff > max_scan {
        return Err(undefined);
    }
    let d = |e: &Expr| differentiate(e).into_result();
    let seq = match f {
        FunSeq::Expr(e) => FunSeq::Expr(d(e)?),
        FunSeq::List { head, tail } => FunSeq::List {
            head: head
                .iter()
                .enumerate()
                .map(|(k, h)| {
                    if (k as u64) + 1 < cutoff {
                        Ok(Expr::zero())
                    } else {
                        d(h)
                    }
                })
                .collect::<Result<_>>()?,
            tail: d(tail)?,
        },
        FunSeq::Generated(_) => FunSeq::Generated(Arc::new(Derived {
            inner: f.clone(),
            cutoff,
        })),
    };
    Ok(LiftedDerivative { seq, cutoff })
}

/// `π_Q(∂ r(F))`.
pub fn sectional_derivative(r: &Section, f: &HyperElement, max_scan: u64) -> Result<HyperElement> {
    let lifted = lift_partial_derivative(&section_apply(r, f)?, max_scan)?;
    Ok(project(lifted.seq, &f.family))
}

/// Does `π_Q(r(F))` give back `F`?
pub fn section_law(r: &Section, f: &HyperElement, w: &Window) -> Result<Decision> {
    equivalent(&section_apply(r, f)?, &f.rep, &f.family, w)
}

/// Compares `r(F + G)` with `r(F) + r(G)` term by term on indices
/// `1..=w.end`, through every probe of the family. Fails at the first index
/// where some probe sees a difference above `1e-9`.
pub fn section_additivity(r: &Section, f: &HyperElement, g: &HyperElement, w: &Window) -> Result<Decision> {
    let lhs = section_apply(r, &hyper_add(f, g)?)?;
    let rhs = seq_add(&section_apply(r, f)?, &section_apply(r, g)?);
    termwise_equal(&lhs, &rhs, &f.family, w)
}

/// Compares `r(cF)` with `c r(F)` term by term, like [`section_additivity`].
pub fn section_homogeneity(r: &Section, f: &HyperElement, c: f64, w: &Window) -> Result<Decision> {
    let lhs = section_apply(r, &hyper_scale(c, f))?;
    let rhs = seq_scale(c, &section_apply(r, f)?);
    termwise_equal(&lhs, &rhs, &f.family, w)
}

fn termwise_equal(lhs: &FunSeq, rhs: &FunSeq, q: &SeminormFamily, w: &Window) -> Result<Decision> {
    let diff = seq_sub(lhs, rhs);
    for i in 1..=w.end {
        let term = diff.term(i)?;
        for p in q.probes() {
            let value = seminorm_value(p, &term, i)?;
            if value > 1e-9 {
                let witness = Witness {
                    probe: p.clone(),
                    index: i,
                    value,
                };
                return Ok(Decision {
                    verdict: Verdict::Fails,
                    traces: Vec::new(),
                    witness: Some(witness),
                });
            }
        }
    }
    Ok(Decision::settled(Verdict::Holds))
}

/// `∂_r(aF + bG)` against `a ∂_r F + b ∂_r G`.
pub fn check_linearity(
    r: &Section,
    f: &HyperElement,
    g: &HyperElement,
    a: f64,
    b: f64,
    max_scan: u64,
    w: &Window,
) -> Result<Decision> {
    let lhs = sectional_derivative(r, &hyper_add(&hyper_scale(a, f), &hyper_scale(b, g))?, max_scan)?;
    let rhs = hyper_add(
        &hyper_scale(a, &sectional_derivative(r, f, max_scan)?),
        &hyper_scale(b, &sectional_derivative(r, g, max_scan)?),
    )?;
    equivalent(&lhs.rep, &rhs.rep, &f.family, w)
}

/// `∂_r(F + e)` against `∂_r F + ∂e` for a function `e` of `x`.
pub fn check_shift(r: &Section, f: &HyperElement, e: &Expr, max_scan: u64, w: &Window) -> Result<Decision> {
    let shifted = hyper_add(f, &project(embed_stable(e)?, &f.family))?;
    let lhs = sectional_derivative(r, &shifted, max_scan)?;
    let de = differentiate(e).into_result()?;
    let rhs = seq_add(&sectional_derivative(r, f, max_scan)?.rep, &FunSeq::Expr(de));
    equivalent(&lhs.rep, &rhs, &f.family, w)
}

/// Evidence that two sequences, equivalent as classes, have non-equivalent
/// termwise derivatives.
#[derive(Debug, Clone)]
pub struct IrregularityReport {
    pub classes: Decision,
    pub derivatives: Decision,
}

impl IrregularityReport {
    pub fn pattern(&self) -> (Verdict, Verdict) {
        (self.classes.verdict, self.derivatives.verdict)
    }
}

/// Equivalence of `f` and `g`, and of their termwise derivatives.
pub fn irregularity(f: &FunSeq, g: &FunSeq, q: &SeminormFamily, w: &Window) -> Result<IrregularityReport> {
    let classes = equivalent(f, g, q, w)?;
    let df = lift_partial_derivative(f, w.end)?.seq;
    let dg = lift_partial_derivative(g, w.end)?.seq;
    let derivatives = equivalent(&df, &dg, q, w)?;
    Ok(IrregularityReport { classes, derivatives })
}

/// `(1/2)^n sin(2^n x)` against `0`: the same class, with derivatives
/// `cos(2^n x)` and `0` in different classes. Both are representatives of
/// the zero class, so the two sections that pick them give that constant
/// class two different sectional derivatives.
pub fn irregularity_demo(q: &SeminormFamily, w: &Window) -> Result<IrregularityReport> {
    irregularity(&decaying_oscillation(), &FunSeq::zero(), q, w)
}

pub fn decaying_oscillation() -> FunSeq {
    FunSeq::Expr(Expr::mul(
        Expr::pow(Expr::ratio(1, 2), Expr::N),
        Expr::call(
            crate::expr::Func::Sin,
            Expr::mul(Expr::pow(Expr::int(2), Expr::N), Expr::X),
        ),
    ))
}

/// The section on hypernumbers that agrees with the representative section
/// except on the class of the constant `2`, where it picks `(2 + 1/n)`.
pub fn nonadditive_section() -> Section {
    let two = HyperElement {
        rep: FunSeq::Expr(Expr::int(2)),
        family: SeminormFamily::abs(),
        combination: None,
    };
    let pick = FunSeq::Expr(Expr::add(Expr::int(2), Expr::div(Expr::one(), Expr::N)));
    Section::patched(Section::Rep, vec![(two, pick)], Window::hypernumber())
}

#[derive(Debug)]
struct PointDifference {
    h: FunSeq,
    c: f64,
    d: f64,
}

impl TermSource for PointDifference {
    fn term(&self, i: u64) -> Result<Expr> {
        Ok(Expr::real(self.h.eval(i, self.c)? - self.h.eval(i, self.d)?))
    }

    fn describe(&self) -> String {
        format!("{}(@{} - @{})", self.h, self.c, self.d)
    }
}

#[derive(Debug, Clone)]
pub enum ConstancyOutcome {
    /// The sectional derivative null-checked; carries the verdict on the
    /// point differences.
    Checked(Decision),
    /// The sectional derivative did not null-check; carries that decision.
    PreconditionFailed(Decision),
}

/// A class with vanishing sectional derivative is constant: for each pair
/// `(c, d)` the numbers `h_i(c) - h_i(d)` tend to zero, with `h = r(F)`.
pub fn constancy_check(
    f: &HyperElement,
    r: &Section,
    pairs: &[(f64, f64)],
    max_scan: u64,
    w: &Window,
) -> Result<ConstancyOutcome> {
    let derivative = sectional_derivative(r, f, max_scan)?;
    let pre = null_check(&derivative.rep, &f.family, w)?;
    if !pre.holds() {
        return Ok(ConstancyOutcome::PreconditionFailed(pre));
    }
    let h = section_apply(r, f)?;
    let abs = SeminormFamily::abs();
    let mut traces = Vec::new();
    let mut verdict = Verdict::Holds;
    let mut witness = None;
    for &(c, d) in pairs {
        let diff = FunSeq::Generated(Arc::new(PointDifference { h: h.clone(), c, d }));
        let dec = null_check(&diff, &abs, w)?;
        if dec.verdict != Verdict::Holds && verdict != Verdict::Fails {
            verdict = dec.verdict;
            witness = dec.witness;
        }
        traces.extend(dec.traces);
    }
    Ok(ConstancyOutcome::Checked(Decision {
        verdict,
        traces,
        witness,
    }))
}

/// Checks `∂(fg) = (∂f) g + f (∂g)` in value at 100 random points
/// `x ∈ [-3, 3]`, `n ∈ 1..=10`, within `1e-9 (1 + |rhs|)`. Points outside
/// the domain of either side are skipped.
pub fn check_leibniz(f: &Expr, g: &Expr, seed: u64) -> Result<Decision> {
    let df = differentiate(f).into_result()?;
    let dg = differentiate(g).into_result()?;
    let lhs = match differentiate(&Expr::mul(f.clone(), g.clone())) {
        DiffResult::Derivative(d) => d,
        DiffResult::NonDifferentiable(sub) => return Err(Error::NonDifferentiable(sub.to_string())),
    };
    let rhs = Expr::add(Expr::mul(df, g.clone()), Expr::mul(f.clone(), dg));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(-3.0..=3.0);
        let n: u64 = rng.gen_range(1..=10);
        let (Ok(a), Ok(b)) = (eval(&lhs, x, n), eval(&rhs, x, n)) else {
            continue;
        };
        if (a - b).abs() > 1e-9 * (1.0 + b.abs()) {
            let witness = Witness {
                probe: Probe::point(x),
                index: n,
                value: (a - b).abs(),
            };
            return Ok(Decision {
                verdict: Verdict::Fails,
                traces: Vec::new(),
                witness: Some(witness),
            });
        }
    }
    Ok(Decision::settled(Verdict::Holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::hyperspace::is_stable_element;

    fn e(src: &str) -> Expr {
        parse(src).unwrap()
    }

    fn seq(src: &str) -> FunSeq {
        FunSeq::parse(src).unwrap()
    }

    fn unit_sup() -> SeminormFamily {
        SeminormFamily::compact_sup(&[(0.0, 1.0)], 1001).unwrap()
    }

    fn grid_max(f: &FunSeq, i: u64, a: f64, b: f64) -> f64 {
        (0..=2000)
            .map(|j| f.eval(i, a + (b - a) * j as f64 / 2000.0).unwrap().abs())
            .fold(0.0, f64::max)
    }

    fn basis(q: &SeminormFamily) -> Section {
        Section::basis_linear(
            vec![
                BasisEntry::new("h1", project(seq("x"), q), seq("x + (1/2)^n*sin(2^n*x)")),
                BasisEntry::new("h2", project(seq("sin(x)"), q), seq("sin(x)")),
            ],
            &Window::default(),
        )
        .unwrap()
    }

    #[test]
    fn rep_section_returns_the_representative() {
        let q = unit_sup();
        let r = section_apply(&Section::Rep, &project(seq("x^n"), &q)).unwrap();
        assert_eq!(r.term(4).unwrap(), e("x^n"));
    }

    #[test]
    fn basis_linear_combines_chosen_representatives() {
        let q = unit_sup();
        let r = basis(&q);
        let h1 = HyperElement::basis("h1", seq("x"), &q);
        let h2 = HyperElement::basis("h2", seq("sin(x)"), &q);
        let f = hyper_sub(&hyper_scale(2.0, &h1), &hyper_scale(3.0, &h2)).unwrap();
        let out = section_apply(&r, &f).unwrap();
        for i in [1, 3, 9] {
            for x in [0.1, 0.7] {
                let want =
                    2.0 * (x + 0.5f64.powi(i as i32) * (2f64.powi(i as i32) * x).sin()) - 3.0 * x.sin();
                assert!((out.eval(i, x).unwrap() - want).abs() < 1e-12);
            }
        }
        assert!(section_law(&r, &f, &Window::default()).unwrap().holds());
        let bare = project(seq("x"), &q);
        assert!(matches!(section_apply(&r, &bare), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn basis_rejects_equivalent_elements() {
        let q = unit_sup();
        let r = Section::basis_linear(
            vec![
                BasisEntry::new("a", project(seq("x"), &q), seq("x")),
                BasisEntry::new("b", project(seq("x + 1/2^n"), &q), seq("x")),
            ],
            &Window::default(),
        );
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn patched_section_picks_the_override() {
        let r = nonadditive_section();
        let two = HyperElement::hn(seq("2")).unwrap();
        let out = section_apply(&r, &two).unwrap();
        assert_eq!(out.eval(1, 0.0).unwrap(), 3.0);
        assert_eq!(out.eval(2, 0.0).unwrap(), 2.5);
        let one = HyperElement::hn(seq("1")).unwrap();
        let d = section_additivity(&r, &one, &one, &Window::hypernumber()).unwrap();
        assert_eq!(d.verdict, Verdict::Fails);
        let w = d.witness.unwrap();
        assert_eq!(w.index, 1);
        assert_eq!(w.value, 1.0);
        assert!(section_law(&r, &two, &Window::hypernumber()).unwrap().holds());
    }

    #[test]
    fn lifted_derivative_examples() {
        let l = lift_partial_derivative(&seq("x^n"), 100).unwrap();
        assert_eq!(l.cutoff, 1);
        assert_eq!(l.seq.term(3).unwrap(), crate::expr::simplify(&e("n*x^(n-1)")));
        let f = FunSeq::list(vec![e("abs(x)")], e("x^2"));
        let l = lift_partial_derivative(&f, 100).unwrap();
        assert_eq!(l.cutoff, 2);
        assert_eq!(l.seq.eval(1, 0.7).unwrap(), 0.0);
        assert_eq!(l.seq.eval(2, 0.7).unwrap(), 1.4);
        assert_eq!(l.seq.eval(7, 0.7).unwrap(), 1.4);
        assert!(matches!(
            lift_partial_derivative(&seq("abs(x)"), 100),
            Err(Error::UndefinedDerivative { scanned: 100 })
        ));
    }

    #[test]
    fn lifted_cutoff_respects_scan_limit() {
        let head = vec![e("abs(x)"); 5];
        let f = FunSeq::list(head, e("x"));
        assert_eq!(lift_partial_derivative(&f, 6).unwrap().cutoff, 6);
        assert!(lift_partial_derivative(&f, 5).is_err());
    }

    #[test]
    fn sectional_derivative_examples() {
        let w = Window::default();
        let q = unit_sup();
        let d = sectional_derivative(&Section::Rep, &project(seq("x^n"), &q), 100).unwrap();
        assert!(d.equals(&project(seq("n*x^(n-1)"), &q), &w).unwrap().holds());
        let d = sectional_derivative(&Section::Rep, &project(seq("x^2"), &q), 100).unwrap();
        assert!(d.equals(&project(seq("2*x"), &q), &w).unwrap().holds());
        assert!(is_stable_element(&d, &w).unwrap().holds());
        let c = HyperElement::hn(seq("3 + 1/n")).unwrap();
        let d = sectional_derivative(&Section::Rep, &c, 100).unwrap();
        assert!(null_check(&d.rep, &d.family, &Window::hypernumber())
            .unwrap()
            .holds());
    }

    #[test]
    fn irregularity_examples() {
        let w = Window::default();
        let r = irregularity_demo(&unit_sup(), &w).unwrap();
        assert_eq!(r.pattern(), (Verdict::Holds, Verdict::Fails));
        assert!(r.derivatives.witness.as_ref().unwrap().value > 0.99);
        let pts = SeminormFamily::pointwise(&[0.3, 1.1]).unwrap();
        assert_eq!(
            irregularity_demo(&pts, &w).unwrap().pattern(),
            (Verdict::Holds, Verdict::Fails)
        );
        let g = FunSeq::zero();
        assert_eq!(
            irregularity(&g, &g, &pts, &w).unwrap().pattern(),
            (Verdict::Holds, Verdict::Holds)
        );
    }

    #[test]
    fn smoothing_sine() {
        let q = unit_sup();
        let s = smoothing_section_build(&project(seq("sin(x)"), &q), 1.0, SMOOTHING_CAP, Approximant::Auto)
            .unwrap();
        for i in 8..=12 {
            let err = (0..=2000)
                .map(|j| {
                    let x = -1.0 + j as f64 / 1000.0;
                    (s.eval(i, x).unwrap() - x.sin()).abs()
                })
                .fold(0.0, f64::max);
            assert!(err < 1e-3, "i={i} err={err}");
        }
    }

    #[test]
    fn smoothing_keeps_null_sequences_null() {
        let w = Window::default();
        let q = unit_sup();
        let f = project(decaying_oscillation(), &q);
        let s = section_apply(&Section::default_smoothing(), &f).unwrap();
        for i in [8, 12, 20] {
            assert!(grid_max(&s, i, -1.0, 1.0) <= 0.5f64.powi(i as i32) * (1.0 + 1e-12));
        }
        assert!(null_check(&s, &q, &w).unwrap().holds());
    }

    #[test]
    fn smoothing_regularises_kinks() {
        let w = Window::default();
        let q = SeminormFamily::compact_sup(&[(-1.0, 1.0)], 1001).unwrap();
        let f = project(seq("abs(x - 1/2)"), &q);
        let s = section_apply(&Section::default_smoothing(), &f).unwrap();
        assert!(s.differentiable_from() == Some(1));
        for i in [3, 12, 30] {
            let err = (0..=2000)
                .map(|j| {
                    let x = -1.0 + j as f64 / 1000.0;
                    (s.eval(i, x).unwrap() - (x - 0.5).abs()).abs()
                })
                .fold(0.0, f64::max);
            assert!(err <= 0.5f64.powi(i as i32) * (1.0 + 1e-9), "i={i} err={err}");
        }
        assert!(section_law(&Section::default_smoothing(), &f, &w)
            .unwrap()
            .holds());
        assert!(sectional_derivative(&Section::default_smoothing(), &f, 100).is_ok());
    }

    #[test]
    fn patched_section_is_not_uniform() {
        let one = HyperElement::hn(seq("1")).unwrap();
        let d = section_homogeneity(&nonadditive_section(), &one, 2.0, &Window::hypernumber()).unwrap();
        assert_eq!(d.witness.unwrap().index, 1);
        let d = section_homogeneity(&Section::Rep, &one, 2.0, &Window::hypernumber()).unwrap();
        assert!(d.holds());
    }

    #[test]
    fn smoothing_zero_is_zero() {
        let q = unit_sup();
        let s = section_apply(&Section::default_smoothing(), &HyperElement::zero(&q)).unwrap();
        for i in [1, 5, 30] {
            assert_eq!(grid_max(&s, i, -(i as f64), i as f64), 0.0);
        }
    }

    #[test]
    fn smoothing_bernstein_mode() {
        let q = unit_sup();
        let f = project(seq("x^2"), &q);
        let s = smoothing_section_build(&f, 1.0, 64, Approximant::Bernstein).unwrap();
        // Bernstein of x^2 on [-c, c] at degree d errs by c^2 (1 - x'^2)/d at most.
        assert!((s.eval(3, 0.0).unwrap() - 9.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn conjugations() {
        let w = Window::default();
        let q = unit_sup();
        let f = project(seq("x^n + 1/n"), &q);
        let id = conjugate_mt(1.0, Section::Rep).unwrap();
        let g = section_apply(&id, &f).unwrap();
        assert_eq!(g.eval(3, 0.4).unwrap(), f.rep.eval(3, 0.4).unwrap());
        let id = conjugate_ad(Expr::zero(), Section::Rep).unwrap();
        assert_eq!(
            section_apply(&id, &f).unwrap().eval(3, 0.4).unwrap(),
            f.rep.eval(3, 0.4).unwrap()
        );
        let mt2 = conjugate_mt(2.0, Section::Rep).unwrap();
        let twice = hyper_scale(2.0, &f);
        let out = section_apply(&mt2, &twice).unwrap();
        for i in [1, 4] {
            assert!((out.eval(i, 0.3).unwrap() - 2.0 * f.rep.eval(i, 0.3).unwrap()).abs() < 1e-15);
        }
        assert!(section_law(&mt2, &twice, &w).unwrap().holds());
        let ad = conjugate_ad(e("sin(x)"), basis(&q)).unwrap();
        let h1 = HyperElement::basis("h1", seq("x"), &q);
        assert!(matches!(section_apply(&ad, &h1), Err(Error::OutOfDomain(_))));
        assert!(matches!(conjugate_mt(0.0, Section::Rep), Err(Error::ZeroScalar)));
        assert!(matches!(conjugate_ad(e("n"), Section::Rep), Err(Error::Shape(_))));
    }

    #[test]
    fn constancy_examples() {
        let w = Window::default();
        let q = unit_sup();
        let pairs = [(0.0, 1.0), (0.2, 0.9)];
        let five = project(seq("5"), &q);
        let out = constancy_check(&five, &Section::default_smoothing(), &pairs, 100, &w).unwrap();
        assert!(matches!(out, ConstancyOutcome::Checked(d) if d.holds()));
        let drift = project(seq("5 + 1/n"), &q);
        let out = constancy_check(&drift, &Section::Rep, &pairs, 100, &w).unwrap();
        assert!(matches!(out, ConstancyOutcome::Checked(d) if d.holds()));
        let osc = project(seq("x + cos(2^n*x)/n"), &q);
        let out = constancy_check(&osc, &Section::Rep, &pairs, 100, &w).unwrap();
        assert!(matches!(out, ConstancyOutcome::PreconditionFailed(d) if d.fails()));
    }

    #[test]
    fn leibniz_examples() {
        assert!(check_leibniz(&e("x"), &e("sin(x)"), 1).unwrap().holds());
        assert!(check_leibniz(&e("x^2"), &e("x^3"), 1).unwrap().holds());
        assert!(matches!(
            check_leibniz(&e("abs(x)"), &e("x"), 1),
            Err(Error::NonDifferentiable(_))
        ));
    }

    #[test]
    fn linearity_with_basis_section() {
        let w = Window::default();
        let q = unit_sup();
        let r = basis(&q);
        let h1 = HyperElement::basis("h1", seq("x"), &q);
        let h2 = HyperElement::basis("h2", seq("sin(x)"), &q);
        let d = check_linearity(&r, &h1, &h2, 2.5, -0.75, 100, &w).unwrap();
        assert!(d.holds());
    }

    #[test]
    fn shift_with_rep_section() {
        let w = Window::default();
        let q = unit_sup();
        let f = project(seq("x^n/n"), &q);
        assert!(check_shift(&Section::Rep, &f, &e("sin(x)"), 100, &w)
            .unwrap()
            .holds());
    }
}
