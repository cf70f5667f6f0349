//! Sequences of functions, the windowed equivalence test and the hyperspace
//! of classes built on it.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::expr::{differentiate, eval, Expr};
use crate::seminorm::{seminorm_value, Probe, ProbeKind, SeminormFamily, DEFAULT_GRID};
use crate::{Error, Result};

/// A lazily produced sequence of terms. `term(i)` is evaluated with `n = i`.
pub trait TermSource: fmt::Debug + Send + Sync {
    fn term(&self, i: u64) -> Result<Expr>;
    fn describe(&self) -> String;

    /// An index from which every term is known to be differentiable.
    fn differentiable_from(&self) -> Option<u64> {
        None
    }
}

/// An element of the sequence space. Indices start at 1.
#[derive(Debug, Clone)]
pub enum FunSeq {
    /// `f_i = e` with `n = i`.
    Expr(Expr),
    /// `f_i = head[i-1]` for `i <= head.len()`, else `tail` with `n = i`.
    List {
        head: Vec<Expr>,
        tail: Expr,
    },
    Generated(Arc<dyn TermSource>),
}

impl FunSeq {
    pub fn expr(e: Expr) -> FunSeq {
        FunSeq::Expr(e)
    }

    pub fn list(head: Vec<Expr>, tail: Expr) -> FunSeq {
        FunSeq::List { head, tail }
    }

    pub fn parse(src: &str) -> Result<FunSeq> {
        Ok(FunSeq::Expr(crate::expr::parse(src)?))
    }

    pub fn zero() -> FunSeq {
        FunSeq::Expr(Expr::zero())
    }

    /// The term at index `i` (to be evaluated with `n = i`).
    pub fn term(&self, i: u64) -> Result<Expr> {
        if i == 0 {
            return Err(Error::InvalidArgument("sequence indices start at 1".into()));
        }
        match self {
            FunSeq::Expr(e) => Ok(e.clone()),
            FunSeq::List { head, tail } => Ok(head.get(i as usize - 1).unwrap_or(tail).clone()),
            FunSeq::Generated(src) => src.term(i),
        }
    }

    /// `f_i(x)`.
    pub fn eval(&self, i: u64, x: f64) -> Result<f64> {
        eval(&self.term(i)?, x, i)
    }

    /// Syntactically constant in the index: the same `n`-free term at every
    /// position.
    pub fn is_stable(&self) -> bool {
        match self {
            FunSeq::Expr(e) => !e.has_n(),
            FunSeq::List { head, tail } => !tail.has_n() && head.iter().all(|h| h == tail),
            FunSeq::Generated(_) => false,
        }
    }

    /// An index from which every term is differentiable in `x`, if one is
    /// known without sampling. Expression tails are checked symbolically.
    pub fn differentiable_from(&self) -> Option<u64> {
        let ok = |e: &Expr| differentiate(e).derivative().is_some();
        match self {
            FunSeq::Expr(e) => ok(e).then_some(1),
            FunSeq::List { head, tail } => {
                if !ok(tail) {
                    return None;
                }
                Some(head.iter().rposition(|h| !ok(h)).map_or(1, |k| k as u64 + 2))
            }
            FunSeq::Generated(src) => src.differentiable_from(),
        }
    }

    /// True if no term depends on `x` (a number sequence).
    pub fn is_numeric(&self) -> Option<bool> {
        match self {
            FunSeq::Expr(e) => Some(!e.has_x()),
            FunSeq::List { head, tail } => Some(!tail.has_x() && head.iter().all(|h| !h.has_x())),
            FunSeq::Generated(_) => None,
        }
    }
}

impl fmt::Display for FunSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunSeq::Expr(e) => write!(f, "({e})"),
            FunSeq::List { head, tail } => {
                let head: Vec<String> = head.iter().map(|h| h.to_string()).collect();
                write!(f, "[{}; {tail}]", head.join(", "))
            }
            FunSeq::Generated(src) => f.write_str(&src.describe()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
}

impl BinOp {
    fn apply(self, a: Expr, b: Expr) -> Expr {
        match self {
            BinOp::Add => Expr::add(a, b),
            BinOp::Sub => Expr::sub(a, b),
        }
    }
}

#[derive(Debug)]
struct Combined {
    op: BinOp,
    f: FunSeq,
    g: FunSeq,
}

impl TermSource for Combined {
    fn term(&self, i: u64) -> Result<Expr> {
        Ok(self.op.apply(self.f.term(i)?, self.g.term(i)?))
    }

    fn describe(&self) -> String {
        let op = if self.op == BinOp::Add { "+" } else { "-" };
        format!("{} {op} {}", self.f, self.g)
    }

    fn differentiable_from(&self) -> Option<u64> {
        Some(self.f.differentiable_from()?.max(self.g.differentiable_from()?))
    }
}

#[derive(Debug)]
struct Scaled {
    c: Expr,
    f: FunSeq,
}

impl TermSource for Scaled {
    fn term(&self, i: u64) -> Result<Expr> {
        Ok(Expr::mul(self.c.clone(), self.f.term(i)?))
    }

    fn describe(&self) -> String {
        format!("{}*{}", self.c, self.f)
    }

    fn differentiable_from(&self) -> Option<u64> {
        self.f.differentiable_from()
    }
}

fn combine(op: BinOp, f: &FunSeq, g: &FunSeq) -> FunSeq {
    match (f, g) {
        (FunSeq::Expr(a), FunSeq::Expr(b)) => FunSeq::Expr(op.apply(a.clone(), b.clone())),
        (FunSeq::Generated(_), _) | (_, FunSeq::Generated(_)) => FunSeq::Generated(Arc::new(Combined {
            op,
            f: f.clone(),
            g: g.clone(),
        })),
        _ => {
            let len = head_len(f).max(head_len(g));
            let head = (1..=len as u64)
                .map(|i| op.apply(f.term(i).unwrap(), g.term(i).unwrap()))
                .collect();
            FunSeq::List {
                head,
                tail: op.apply(tail_of(f), tail_of(g)),
            }
        }
    }
}

fn head_len(f: &FunSeq) -> usize {
    match f {
        FunSeq::List { head, .. } => head.len(),
        _ => 0,
    }
}

fn tail_of(f: &FunSeq) -> Expr {
    match f {
        FunSeq::Expr(e) => e.clone(),
        FunSeq::List { tail, .. } => tail.clone(),
        FunSeq::Generated(_) => unreachable!("generated sequences combine lazily"),
    }
}

/// `(f_i + g_i)`.
pub fn seq_add(f: &FunSeq, g: &FunSeq) -> FunSeq {
    combine(BinOp::Add, f, g)
}

/// `(f_i - g_i)`.
pub fn seq_sub(f: &FunSeq, g: &FunSeq) -> FunSeq {
    combine(BinOp::Sub, f, g)
}

/// `(c f_i)`.
pub fn seq_scale(c: f64, f: &FunSeq) -> FunSeq {
    let c = Expr::real(c);
    match f {
        FunSeq::Expr(e) => FunSeq::Expr(Expr::mul(c, e.clone())),
        FunSeq::List { head, tail } => FunSeq::List {
            head: head.iter().map(|h| Expr::mul(c.clone(), h.clone())).collect(),
            tail: Expr::mul(c, tail.clone()),
        },
        FunSeq::Generated(_) => FunSeq::Generated(Arc::new(Scaled { c, f: f.clone() })),
    }
}

/// Finite stand-in for `i -> infinity`: indices `start..=end` and a tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub start: u64,
    pub end: u64,
    pub epsilon: f64,
}

impl Window {
    pub fn new(start: u64, end: u64, epsilon: f64) -> Result<Window> {
        if start < 1 || start >= end {
            return Err(Error::InvalidArgument(format!(
                "window needs 1 <= start < end, got {start}:{end}"
            )));
        }
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "window epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(Window { start, end, epsilon })
    }

    /// Default for number sequences, where `1/n`-type decay is slow.
    pub fn hypernumber() -> Window {
        Window {
            start: 8,
            end: 512,
            epsilon: 1e-2,
        }
    }

    pub fn for_family(q: &SeminormFamily) -> Window {
        if q.kind() == ProbeKind::Abs {
            Window::hypernumber()
        } else {
            Window::default()
        }
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<u64> {
        self.start..=self.end
    }

    /// Length of the head and tail quarters: `ceil((end - start) / 4)`.
    pub fn quarter(&self) -> usize {
        (self.end - self.start).div_ceil(4) as usize
    }

    /// Values at or below this count as numerically zero when comparing
    /// head and tail.
    pub fn noise_floor(&self) -> f64 {
        self.epsilon * 1e-4
    }
}

impl Default for Window {
    fn default() -> Window {
        Window {
            start: 8,
            end: 64,
            epsilon: 1e-6,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{:e}", self.start, self.end, self.epsilon)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Window> {
        let bad = || Error::InvalidArgument(format!("window must be START:END:EPS, got `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, eps] = parts[..] else {
            return Err(bad());
        };
        Window::new(
            start.trim().parse().map_err(|_| bad())?,
            end.trim().parse().map_err(|_| bad())?,
            eps.trim().parse().map_err(|_| bad())?,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Values `q_t(f_i)` of one probe over a window.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeTrace {
    pub probe: Probe,
    pub start: u64,
    pub values: Vec<f64>,
    /// Threshold the values were compared against.
    pub bound: f64,
    pub head_max: f64,
    pub tail_max: f64,
}

impl ProbeTrace {
    pub fn value_at(&self, i: u64) -> Option<f64> {
        i.checked_sub(self.start)
            .and_then(|k| self.values.get(k as usize))
            .copied()
    }

    pub fn indexed(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| (self.start + k as u64, v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub probe: Probe,
    pub index: u64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub verdict: Verdict,
    pub traces: Vec<ProbeTrace>,
    pub witness: Option<Witness>,
}

impl Decision {
    /// A verdict settled without sampling.
    pub fn settled(verdict: Verdict) -> Decision {
        Decision {
            verdict,
            traces: Vec::new(),
            witness: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    /// Largest tail value over all probes.
    pub fn tail_max(&self) -> f64 {
        self.traces.iter().fold(0.0, |m, t| m.max(t.tail_max))
    }
}

/// Per-probe values `q_t(f_i)` for every index of the window.
pub fn probe_values(f: &FunSeq, q: &SeminormFamily, w: &Window) -> Result<Vec<Vec<f64>>> {
    let mut values = vec![Vec::with_capacity((w.end - w.start + 1) as usize); q.probes().len()];
    for i in w.indices() {
        let term = f.term(i)?;
        for (p, out) in q.probes().iter().zip(values.iter_mut()) {
            out.push(seminorm_value(p, &term, i)?);
        }
    }
    Ok(values)
}

pub(crate) fn trace(probe: &Probe, values: Vec<f64>, bound: f64, w: &Window) -> ProbeTrace {
    let k = w.quarter();
    let head_max = values[..k].iter().fold(0.0f64, |m, &v| m.max(v));
    let tail_max = values[values.len() - k..].iter().fold(0.0f64, |m, &v| m.max(v));
    ProbeTrace {
        probe: probe.clone(),
        start: w.start,
        values,
        bound,
        head_max,
        tail_max,
    }
}

/// Windowed test of `lim q(f_i) = 0` for every probe.
///
/// Holds when every probe's tail-quarter max is below epsilon and does not
/// exceed its head-quarter max (or is at the noise floor). Fails when some
/// probe's tail max reaches epsilon without having decreased. Otherwise
/// Inconclusive.
pub fn null_check(f: &FunSeq, q: &SeminormFamily, w: &Window) -> Result<Decision> {
    let traces: Vec<ProbeTrace> = probe_values(f, q, w)?
        .into_iter()
        .zip(q.probes())
        .map(|(values, p)| trace(p, values, w.epsilon, w))
        .collect();
    let floor = w.noise_floor();
    let settled = traces
        .iter()
        .all(|t| t.tail_max < w.epsilon && (t.tail_max <= t.head_max || t.tail_max <= floor));
    if settled {
        return Ok(Decision {
            verdict: Verdict::Holds,
            traces,
            witness: None,
        });
    }
    let failing = traces
        .iter()
        .find(|t| t.tail_max >= w.epsilon && t.tail_max >= t.head_max);
    if let Some(t) = failing {
        let k = w.quarter();
        let first = t.values.len() - k;
        let (offset, value) =
            t.values[first..]
                .iter()
                .enumerate()
                .fold(
                    (0, f64::NEG_INFINITY),
                    |best, (j, &v)| if v > best.1 { (j, v) } else { best },
                );
        let witness = Witness {
            probe: t.probe.clone(),
            index: t.start + (first + offset) as u64,
            value,
        };
        return Ok(Decision {
            verdict: Verdict::Fails,
            traces,
            witness: Some(witness),
        });
    }
    Ok(Decision {
        verdict: Verdict::Inconclusive,
        traces,
        witness: None,
    })
}

/// `f ≈_Q g`, decided as `null_check(f - g)`.
pub fn equivalent(f: &FunSeq, g: &FunSeq, q: &SeminormFamily, w: &Window) -> Result<Decision> {
    null_check(&seq_sub(f, g), q, w)
}

/// Constant sequence `(l, l, l, ...)`.
pub fn embed_stable(l: &Expr) -> Result<FunSeq> {
    if l.has_n() {
        return Err(Error::Shape(format!(
            "`{l}` depends on n and cannot be embedded as a stable sequence"
        )));
    }
    Ok(FunSeq::Expr(l.clone()))
}

/// Does some probe tell `f` and `g` apart? Compared at `n = 1` with
/// tolerance `1e-12`.
pub fn separates(q: &SeminormFamily, f: &Expr, g: &Expr) -> Result<bool> {
    for p in q.probes() {
        if (seminorm_value(p, f, 1)? - seminorm_value(p, g, 1)?).abs() > 1e-12 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A class of sequences: a representative together with the family that
/// defines the equivalence.
///
/// `combination` records a presentation as a linear combination of labelled
/// basis classes, carried through the vector operations.
#[derive(Debug, Clone)]
pub struct HyperElement {
    pub rep: FunSeq,
    pub family: SeminormFamily,
    pub combination: Option<Vec<(String, f64)>>,
}

/// `π_Q(f)`.
pub fn project(f: FunSeq, q: &SeminormFamily) -> HyperElement {
    HyperElement {
        rep: f,
        family: q.clone(),
        combination: None,
    }
}

impl HyperElement {
    /// Compactwise class: sup on each interval, default grid.
    pub fn ec(rep: FunSeq, intervals: &[(f64, f64)]) -> Result<HyperElement> {
        Ok(project(
            rep,
            &SeminormFamily::compact_sup(intervals, DEFAULT_GRID)?,
        ))
    }

    /// Pointwise class.
    pub fn ep(rep: FunSeq, points: &[f64]) -> Result<HyperElement> {
        Ok(project(rep, &SeminormFamily::pointwise(points)?))
    }

    /// Hypernumber: class of a number sequence under the absolute value.
    pub fn hn(rep: FunSeq) -> Result<HyperElement> {
        if rep.is_numeric() == Some(false) {
            return Err(Error::Shape(format!(
                "hypernumber representative {rep} depends on x"
            )));
        }
        Ok(project(rep, &SeminormFamily::abs()))
    }

    /// Class of the zero sequence.
    pub fn zero(q: &SeminormFamily) -> HyperElement {
        project(FunSeq::zero(), q)
    }

    /// A labelled basis class, presented as `1 * label`.
    pub fn basis(label: impl Into<String>, rep: FunSeq, q: &SeminormFamily) -> HyperElement {
        HyperElement {
            rep,
            family: q.clone(),
            combination: Some(vec![(label.into(), 1.0)]),
        }
    }

    pub fn with_combination(mut self, combination: Vec<(String, f64)>) -> HyperElement {
        self.combination = Some(combination);
        self
    }

    /// Class equality, decided by the equivalence test.
    pub fn equals(&self, other: &HyperElement, w: &Window) -> Result<Decision> {
        same_family(self, other)?;
        equivalent(&self.rep, &other.rep, &self.family, w)
    }
}

impl fmt::Display for HyperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.rep, self.family)
    }
}

pub(crate) fn same_family(a: &HyperElement, b: &HyperElement) -> Result<()> {
    if a.family != b.family {
        return Err(Error::FamilyMismatch {
            left: a.family.label().into(),
            right: b.family.label().into(),
        });
    }
    Ok(())
}

fn merge(
    a: &Option<Vec<(String, f64)>>,
    b: &Option<Vec<(String, f64)>>,
    sign: f64,
) -> Option<Vec<(String, f64)>> {
    let (a, b) = (a.as_ref()?, b.as_ref()?);
    let mut out = a.clone();
    for (label, c) in b {
        match out.iter_mut().find(|(l, _)| l == label) {
            Some(slot) => slot.1 += sign * c,
            None => out.push((label.clone(), sign * c)),
        }
    }
    Some(out)
}

pub fn hyper_add(f: &HyperElement, g: &HyperElement) -> Result<HyperElement> {
    same_family(f, g)?;
    Ok(HyperElement {
        rep: seq_add(&f.rep, &g.rep),
        family: f.family.clone(),
        combination: merge(&f.combination, &g.combination, 1.0),
    })
}

pub fn hyper_sub(f: &HyperElement, g: &HyperElement) -> Result<HyperElement> {
    same_family(f, g)?;
    Ok(HyperElement {
        rep: seq_sub(&f.rep, &g.rep),
        family: f.family.clone(),
        combination: merge(&f.combination, &g.combination, -1.0),
    })
}

pub fn hyper_scale(c: f64, f: &HyperElement) -> HyperElement {
    HyperElement {
        rep: seq_scale(c, &f.rep),
        family: f.family.clone(),
        combination: f
            .combination
            .as_ref()
            .map(|terms| terms.iter().map(|(l, a)| (l.clone(), c * a)).collect()),
    }
}

/// Semidecision for "has a stable representative": Holds when the
/// representative is syntactically stable or equivalent to the constant
/// sequence of its term at `w.end`; Inconclusive otherwise.
pub fn is_stable_element(f: &HyperElement, w: &Window) -> Result<Decision> {
    if f.rep.is_stable() {
        return Ok(Decision::settled(Verdict::Holds));
    }
    let last = f.rep.term(w.end)?.subst_n(w.end);
    let d = equivalent(&f.rep, &FunSeq::Expr(last), &f.family, w)?;
    let verdict = if d.holds() {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    Ok(Decision { verdict, ..d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn seq(src: &str) -> FunSeq {
        FunSeq::parse(src).unwrap()
    }

    fn unit_sup() -> SeminormFamily {
        SeminormFamily::compact_sup(&[(0.0, 1.0)], 1001).unwrap()
    }

    #[test]
    fn list_indexing_starts_at_one() {
        let f = FunSeq::list(
            vec![parse("x").unwrap(), parse("x^2").unwrap()],
            parse("n").unwrap(),
        );
        assert_eq!(f.eval(1, 3.0).unwrap(), 3.0);
        assert_eq!(f.eval(2, 3.0).unwrap(), 9.0);
        assert_eq!(f.eval(5, 3.0).unwrap(), 5.0);
        assert!(f.term(0).is_err());
    }

    #[test]
    fn null_check_examples() {
        let w = Window::default();
        let d = null_check(&seq("(1/2)^n*sin(2^n*x)"), &unit_sup(), &w).unwrap();
        assert_eq!(d.verdict, Verdict::Holds);
        assert_eq!(
            null_check(&seq("0"), &unit_sup(), &w).unwrap().verdict,
            Verdict::Holds
        );
        let d = null_check(&seq("cos(2^n*x)"), &unit_sup(), &w).unwrap();
        assert_eq!(d.verdict, Verdict::Fails);
        assert!(d.witness.unwrap().value >= 0.9);
    }

    #[test]
    fn equivalent_examples() {
        let w = Window::default();
        let pts = SeminormFamily::pointwise(&[0.0, 0.3, 1.7]).unwrap();
        assert!(equivalent(&seq("(1/2)^n*sin(2^n*x)"), &seq("0"), &pts, &w)
            .unwrap()
            .holds());
        let f = seq("x^n");
        assert!(equivalent(&f, &f, &unit_sup(), &w).unwrap().holds());
        let d = equivalent(
            &seq("1 + 1/n"),
            &seq("1"),
            &SeminormFamily::abs(),
            &Window::hypernumber(),
        )
        .unwrap();
        assert!(d.holds());
    }

    #[test]
    fn short_window_on_slow_decay_is_inconclusive() {
        let w = Window::new(2, 10, 1e-2).unwrap();
        let d = null_check(&seq("1/n"), &SeminormFamily::abs(), &w).unwrap();
        assert_eq!(d.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn trace_quarters() {
        let w = Window::default();
        assert_eq!(w.quarter(), 14);
        let d = null_check(&seq("(1/2)^n"), &SeminormFamily::abs(), &w).unwrap();
        let t = &d.traces[0];
        assert_eq!(t.values.len(), 57);
        assert_eq!(t.head_max, 0.5f64.powi(8));
        assert_eq!(t.tail_max, 0.5f64.powi(51));
        assert_eq!(t.value_at(21), Some(0.5f64.powi(21)));
    }

    #[test]
    fn sequence_operations() {
        let s = seq_add(&seq("x"), &seq("n"));
        assert_eq!(s.eval(3, 2.0).unwrap(), 5.0);
        let z = seq_scale(0.0, &seq("sin(x) + n"));
        assert_eq!(z.eval(4, 1.3).unwrap(), 0.0);
        let f = FunSeq::list(vec![parse("abs(x)").unwrap()], parse("x/n").unwrap());
        let d = seq_sub(&f, &f);
        for i in 1..5 {
            for x in [-1.0, 0.25, 2.0] {
                assert_eq!(d.eval(i, x).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn mixed_list_and_expr_combine_termwise() {
        let f = FunSeq::list(
            vec![parse("1").unwrap(), parse("2").unwrap()],
            parse("n").unwrap(),
        );
        let g = seq("10*n");
        let s = seq_add(&f, &g);
        assert_eq!(s.eval(1, 0.0).unwrap(), 11.0);
        assert_eq!(s.eval(2, 0.0).unwrap(), 22.0);
        assert_eq!(s.eval(3, 0.0).unwrap(), 33.0);
    }

    #[test]
    fn hyper_operations() {
        let w = Window::default();
        let q = unit_sup();
        let f = project(seq("x^2 + (1/2)^n"), &q);
        let f2 = project(seq("x^2"), &q);
        let g = project(seq("sin(x)"), &q);
        let a = hyper_add(&f, &g).unwrap();
        let b = hyper_add(&f2, &g).unwrap();
        assert!(a.equals(&b, &w).unwrap().holds());
        let zero = HyperElement::zero(&q);
        assert!(hyper_add(&f, &zero).unwrap().equals(&f, &w).unwrap().holds());
        let inv = hyper_add(&f, &hyper_scale(-1.0, &f)).unwrap();
        assert!(inv.equals(&zero, &w).unwrap().holds());
    }

    #[test]
    fn family_mismatch() {
        let f = project(seq("x"), &unit_sup());
        let g = project(seq("x"), &SeminormFamily::pointwise(&[0.0]).unwrap());
        assert!(matches!(hyper_add(&f, &g), Err(Error::FamilyMismatch { .. })));
        assert!(matches!(
            f.equals(&g, &Window::default()),
            Err(Error::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn combinations_follow_operations() {
        let q = unit_sup();
        let h1 = HyperElement::basis("h1", seq("x"), &q);
        let h2 = HyperElement::basis("h2", seq("sin(x)"), &q);
        let c = hyper_sub(&hyper_scale(2.0, &h1), &hyper_scale(3.0, &h2)).unwrap();
        assert_eq!(c.combination, Some(vec![("h1".into(), 2.0), ("h2".into(), -3.0)]));
        assert_eq!(hyper_add(&c, &project(seq("x"), &q)).unwrap().combination, None);
    }

    #[test]
    fn embeddings() {
        assert!(embed_stable(&parse("sin(x)").unwrap()).unwrap().is_stable());
        assert!(matches!(
            embed_stable(&parse("n*x").unwrap()),
            Err(Error::Shape(_))
        ));
        let q = unit_sup();
        let l = embed_stable(&parse("x^2").unwrap()).unwrap();
        let a = project(l.clone(), &q);
        let b = project(l, &q);
        assert!(a.equals(&b, &Window::default()).unwrap().holds());
        assert_eq!(a.family.label(), q.label());
    }

    #[test]
    fn separation_examples() {
        let f = parse("x*(x-1)").unwrap();
        let zero = Expr::zero();
        assert!(!separates(&SeminormFamily::pointwise(&[0.0, 1.0]).unwrap(), &f, &zero).unwrap());
        assert!(separates(&SeminormFamily::pointwise(&[0.0, 1.0, 0.5]).unwrap(), &f, &zero).unwrap());
        assert!(separates(&unit_sup(), &parse("x").unwrap(), &zero).unwrap());
    }

    #[test]
    fn stable_elements() {
        let w = Window::default();
        let q = unit_sup();
        let st = |src: &str| is_stable_element(&project(seq(src), &q), &w).unwrap().verdict;
        assert_eq!(st("x^2"), Verdict::Holds);
        assert_eq!(st("(1/2)^n*sin(2^n*x)"), Verdict::Holds);
        assert_eq!(st("cos(2^n*x)"), Verdict::Inconclusive);
    }

    #[test]
    fn hypernumbers_reject_functions() {
        assert!(matches!(HyperElement::hn(seq("x/n")), Err(Error::Shape(_))));
        assert!(HyperElement::hn(seq("2 + 1/n")).is_ok());
    }

    #[test]
    fn window_parsing() {
        assert_eq!("8:64:1e-6".parse::<Window>().unwrap(), Window::default());
        assert!("8:4:1e-6".parse::<Window>().is_err());
        assert!("8:64".parse::<Window>().is_err());
        assert!("8:64:0".parse::<Window>().is_err());
    }
}
