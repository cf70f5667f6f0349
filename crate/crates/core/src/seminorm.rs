//! Finite probe realisations of seminorm families.
//!
//! A family `Q = {q_t; t in K}` is represented by a finite, ordered list of
//! probes, all of one kind. Every decision made elsewhere in the crate is
//! relative to the probe list in use.

use std::fmt;

use crate::expr::{eval, Expr};
use crate::{Error, Result};

pub const DEFAULT_GRID: usize = 1001;
pub const DEFAULT_QUAD_NODES: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub enum Probe {
    /// `|f(x)|`.
    Point { x: f64 },
    /// Max of `|f|` over a uniform grid of `grid` points on `[a, b]`.
    Interval { a: f64, b: f64, grid: usize },
    /// `|integral_a^b f g dx|` by composite Simpson with `nodes` subintervals.
    TestFn { g: Expr, a: f64, b: f64, nodes: usize },
    /// Absolute value of an `x`-independent term.
    Abs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeKind {
    Pointwise,
    CompactSup,
    TestIntegral,
    Abs,
}

impl ProbeKind {
    pub fn name(self) -> &'static str {
        match self {
            ProbeKind::Pointwise => "pointwise",
            ProbeKind::CompactSup => "compact-sup",
            ProbeKind::TestIntegral => "test-integral",
            ProbeKind::Abs => "abs",
        }
    }
}

impl Probe {
    pub fn point(x: f64) -> Probe {
        Probe::Point { x }
    }

    pub fn interval(a: f64, b: f64, grid: usize) -> Result<Probe> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidArgument(format!(
                "interval probe needs a < b, got [{a}, {b}]"
            )));
        }
        if grid < 2 {
            return Err(Error::InvalidArgument(
                "interval probe needs at least 2 grid points".into(),
            ));
        }
        Ok(Probe::Interval { a, b, grid })
    }

    /// A test-function probe. `g` must not depend on `n` and must be
    /// evaluable at every quadrature node.
    pub fn test_fn(g: Expr, a: f64, b: f64, nodes: usize) -> Result<Probe> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidArgument(format!(
                "test-function probe needs a < b, got [{a}, {b}]"
            )));
        }
        if g.has_n() {
            return Err(Error::Shape(format!("test function `{g}` depends on n")));
        }
        let nodes = simpson_nodes(nodes);
        for j in 0..=nodes {
            eval(&g, node(a, b, j, nodes), 1)?;
        }
        Ok(Probe::TestFn { g, a, b, nodes })
    }

    pub fn kind(&self) -> ProbeKind {
        match self {
            Probe::Point { .. } => ProbeKind::Pointwise,
            Probe::Interval { .. } => ProbeKind::CompactSup,
            Probe::TestFn { .. } => ProbeKind::TestIntegral,
            Probe::Abs => ProbeKind::Abs,
        }
    }

    /// Points at which this probe samples its argument, when it samples at
    /// all (the test-function probe samples at its quadrature nodes).
    pub fn sample_points(&self) -> Vec<f64> {
        match self {
            Probe::Point { x } => vec![*x],
            Probe::Interval { a, b, grid } => (0..*grid).map(|j| node(*a, *b, j, grid - 1)).collect(),
            Probe::TestFn { a, b, nodes, .. } => (0..=*nodes).map(|j| node(*a, *b, j, *nodes)).collect(),
            Probe::Abs => vec![0.0],
        }
    }
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probe::Point { x } => write!(f, "pt({x})"),
            Probe::Interval { a, b, grid } => write!(f, "sup[{a},{b}]#{grid}"),
            Probe::TestFn { g, a, b, nodes } => write!(f, "int[{g}; {a},{b}]#{nodes}"),
            Probe::Abs => f.write_str("abs"),
        }
    }
}

// Shared by the grid max and Simpson so refined grids nest exactly.
fn node(a: f64, b: f64, j: usize, intervals: usize) -> f64 {
    a + (b - a) * (j as f64 / intervals as f64)
}

fn simpson_nodes(nodes: usize) -> usize {
    let m = nodes.max(2);
    m + m % 2
}

/// `q_t(f_n)` for a single probe.
pub fn seminorm_value(p: &Probe, f: &Expr, n: u64) -> Result<f64> {
    match p {
        Probe::Point { x } => Ok(eval(f, *x, n)?.abs()),
        Probe::Interval { a, b, grid } => {
            let mut best = 0.0f64;
            for j in 0..*grid {
                best = best.max(eval(f, node(*a, *b, j, grid - 1), n)?.abs());
            }
            Ok(best)
        }
        Probe::TestFn { g, a, b, nodes } => {
            let m = simpson_nodes(*nodes);
            let h = (b - a) / m as f64;
            let mut sum = 0.0;
            for j in 0..=m {
                let x = node(*a, *b, j, m);
                let w = if j == 0 || j == m {
                    1.0
                } else if j % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                sum += w * eval(f, x, n)? * eval(g, x, n)?;
            }
            Ok((sum * h / 3.0).abs())
        }
        Probe::Abs => {
            if f.has_x() {
                return Err(Error::Shape(format!(
                    "absolute-value probe needs an x-free term, got `{f}`"
                )));
            }
            Ok(eval(f, 0.0, n)?.abs())
        }
    }
}

/// A non-empty, homogeneous, ordered list of probes.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormFamily {
    label: String,
    probes: Vec<Probe>,
}

impl SeminormFamily {
    pub fn new(label: impl Into<String>, probes: Vec<Probe>) -> Result<SeminormFamily> {
        let Some(first) = probes.first() else {
            return Err(Error::Shape("a seminorm family needs at least one probe".into()));
        };
        let kind = first.kind();
        if let Some(odd) = probes.iter().find(|p| p.kind() != kind) {
            return Err(Error::Shape(format!(
                "mixed probe kinds in one family: {} and {}",
                kind.name(),
                odd.kind().name()
            )));
        }
        Ok(SeminormFamily {
            label: label.into(),
            probes,
        })
    }

    /// Point-evaluation probes (pointwise extrafunctions).
    pub fn pointwise(points: &[f64]) -> Result<SeminormFamily> {
        let label = format!("pointwise{points:?}");
        SeminormFamily::new(label, points.iter().map(|&x| Probe::point(x)).collect())
    }

    /// Sup-on-compact probes (compactwise extrafunctions).
    pub fn compact_sup(intervals: &[(f64, f64)], grid: usize) -> Result<SeminormFamily> {
        let probes = intervals
            .iter()
            .map(|&(a, b)| Probe::interval(a, b, grid))
            .collect::<Result<Vec<_>>>()?;
        let spans: Vec<String> = intervals.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        SeminormFamily::new(format!("compact-sup{}", spans.join("")), probes)
    }

    /// Integral-against-test-function probes.
    pub fn test_integral(tests: Vec<(Expr, f64, f64)>, nodes: usize) -> Result<SeminormFamily> {
        let label = format!(
            "test-integral[{}]",
            tests
                .iter()
                .map(|(g, _, _)| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        let probes = tests
            .into_iter()
            .map(|(g, a, b)| Probe::test_fn(g, a, b, nodes))
            .collect::<Result<Vec<_>>>()?;
        SeminormFamily::new(label, probes)
    }

    /// The absolute value on number sequences (hypernumbers).
    pub fn abs() -> SeminormFamily {
        SeminormFamily {
            label: "abs".into(),
            probes: vec![Probe::Abs],
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn probes(&self) -> &[Probe] {
        &self.probes
    }

    pub fn kind(&self) -> ProbeKind {
        self.probes[0].kind()
    }

    /// A family with the same probes and a new label.
    pub fn relabel(mut self, label: impl Into<String>) -> SeminormFamily {
        self.label = label.into();
        self
    }
}

impl fmt::Display for SeminormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Max of `q_t(f_n)` over all probes of the family.
pub fn family_sup(q: &SeminormFamily, f: &Expr, n: u64) -> Result<f64> {
    q.probes()
        .iter()
        .try_fold(0.0f64, |m, p| Ok(m.max(seminorm_value(p, f, n)?)))
}
