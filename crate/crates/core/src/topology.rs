//! Neighbourhood membership for the local and uniform topologies on
//! functions, sequences and classes, and the separation witness for the
//! Hausdorff property of the hyperspace.
//!
//! Existential quantifiers are explicit: margins stand for the `k` in
//! `q(f - g) < r - k`, and the window start stands for the cutoff index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::Expr;
use crate::hyperspace::{
    probe_values, same_family, seq_add, seq_scale, seq_sub, trace, Decision, FunSeq, HyperElement, Verdict,
    Window, Witness,
};
use crate::seminorm::{family_sup, seminorm_value, Probe, SeminormFamily};
use crate::{Error, Result};

/// One radius per probe.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalRadii {
    pub r: Vec<f64>,
}

impl LocalRadii {
    pub fn new(r: Vec<f64>) -> Result<LocalRadii> {
        if r.is_empty() || r.iter().any(|&v| v.is_nan() || v <= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "radii must be positive, got {r:?}"
            )));
        }
        Ok(LocalRadii { r })
    }

    /// The same radius for each of `count` probes.
    pub fn uniform(r: f64, count: usize) -> Result<LocalRadii> {
        LocalRadii::new(vec![r; count])
    }

    fn check(&self, q: &SeminormFamily) -> Result<()> {
        if self.r.len() != q.probes().len() {
            return Err(Error::Shape(format!(
                "{} radii for a family of {} probes",
                self.r.len(),
                q.probes().len()
            )));
        }
        Ok(())
    }
}

/// A shared radius `r` with margin `k`, `0 < k < r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformRadius {
    pub r: f64,
    pub k: f64,
}

impl UniformRadius {
    pub fn new(r: f64, k: f64) -> Result<UniformRadius> {
        if !(k > 0.0 && k < r && r.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "uniform radius needs 0 < k < r, got r={r}, k={k}"
            )));
        }
        Ok(UniformRadius { r, k })
    }
}

fn stable_diff(g: &Expr, l: &Expr) -> Result<Expr> {
    if g.has_n() || l.has_n() {
        return Err(Error::Shape(
            "point neighbourhoods take n-free expressions".into(),
        ));
    }
    Ok(Expr::sub(l.clone(), g.clone()))
}

/// `g` in the local neighbourhood `O_N l`: `q_t(l - g) < r_t` for every probe.
pub fn in_local_nbhd_point(g: &Expr, l: &Expr, radii: &LocalRadii, q: &SeminormFamily) -> Result<bool> {
    radii.check(q)?;
    let d = stable_diff(g, l)?;
    for (p, r) in q.probes().iter().zip(&radii.r) {
        if seminorm_value(p, &d, 1)? >= *r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g` in the uniform neighbourhood `O_r l`: `sup_t q_t(l - g) < r - k`.
pub fn in_uniform_nbhd_point(g: &Expr, l: &Expr, u: &UniformRadius, q: &SeminormFamily) -> Result<bool> {
    Ok(family_sup(q, &stable_diff(g, l)?, 1)? < u.r - u.k)
}

/// `g` in the local neighbourhood of the sequence `f`: for every probe,
/// `q_t(f_i - g_i) < r_t - k_t` at every index of the window.
///
/// Fails when every tail-quarter index of some probe violates its bound.
pub fn in_local_nbhd_seq(
    g: &FunSeq,
    f: &FunSeq,
    radii: &LocalRadii,
    margins: &[f64],
    q: &SeminormFamily,
    w: &Window,
) -> Result<Decision> {
    radii.check(q)?;
    if margins.len() != radii.r.len() {
        return Err(Error::Shape(format!(
            "{} margins for {} radii",
            margins.len(),
            radii.r.len()
        )));
    }
    let bounds = radii
        .r
        .iter()
        .zip(margins)
        .map(|(&r, &k)| {
            if k > 0.0 && k < r {
                Ok(r - k)
            } else {
                Err(Error::InvalidArgument(format!("margin {k} must lie in (0, {r})")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    membership(&seq_sub(f, g), &bounds, q, w)
}

/// Uniform variant: one radius and one margin shared by all probes.
pub fn in_uniform_nbhd_seq(
    g: &FunSeq,
    f: &FunSeq,
    u: &UniformRadius,
    q: &SeminormFamily,
    w: &Window,
) -> Result<Decision> {
    membership(&seq_sub(f, g), &vec![u.r - u.k; q.probes().len()], q, w)
}

fn membership(diff: &FunSeq, bounds: &[f64], q: &SeminormFamily, w: &Window) -> Result<Decision> {
    let traces: Vec<_> = probe_values(diff, q, w)?
        .into_iter()
        .zip(q.probes())
        .zip(bounds)
        .map(|((values, p), &b)| trace(p, values, b, w))
        .collect();
    if traces.iter().all(|t| t.values.iter().all(|&v| v < t.bound)) {
        return Ok(Decision {
            verdict: Verdict::Holds,
            traces,
            witness: None,
        });
    }
    let k = w.quarter();
    for t in &traces {
        let tail = &t.values[t.values.len() - k..];
        if tail.iter().all(|&v| v >= t.bound) {
            let (j, &value) =
                tail.iter().enumerate().fold(
                    (0, &f64::NEG_INFINITY),
                    |best, (j, v)| if v > best.1 { (j, v) } else { best },
                );
            let index = t.start + (t.values.len() - k + j) as u64;
            let witness = Witness {
                probe: t.probe.clone(),
                index,
                value,
            };
            return Ok(Decision {
                verdict: Verdict::Fails,
                traces,
                witness: Some(witness),
            });
        }
    }
    Ok(Decision {
        verdict: Verdict::Inconclusive,
        traces,
        witness: None,
    })
}

/// `G` in the local neighbourhood of `F`, judged on the stored
/// representatives.
pub fn in_nbhd_hyper(
    g: &HyperElement,
    f: &HyperElement,
    radii: &LocalRadii,
    margins: &[f64],
    w: &Window,
) -> Result<Decision> {
    same_family(g, f)?;
    in_local_nbhd_seq(&g.rep, &f.rep, radii, margins, &f.family, w)
}

/// `G` in the uniform neighbourhood of `F`.
pub fn in_uniform_nbhd_hyper(
    g: &HyperElement,
    f: &HyperElement,
    u: &UniformRadius,
    w: &Window,
) -> Result<Decision> {
    same_family(g, f)?;
    in_uniform_nbhd_seq(&g.rep, &f.rep, u, &f.family, w)
}

/// A probe and gap `k` with `q(f_i - g_i) > k` on the witness indices, and
/// the radius `k/4` of two disjoint uniform neighbourhoods.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationWitness {
    pub probe: Probe,
    pub gap: f64,
    pub radius: f64,
    pub indices: Vec<u64>,
}

impl SeparationWitness {
    /// The neighbourhood radius with a small margin, for membership tests.
    pub fn neighbourhood(&self) -> UniformRadius {
        UniformRadius {
            r: self.radius,
            k: self.radius * 1e-3,
        }
    }
}

/// Separates two classes that are not equal.
///
/// Takes the probe with the largest tail value of `q(f_i - g_i)`, keeps the
/// indices where the value reaches half that tail max, and sets `k` to half
/// the smallest value kept.
pub fn separation_witness(f: &HyperElement, g: &HyperElement, w: &Window) -> Result<SeparationWitness> {
    same_family(f, g)?;
    let diff = seq_sub(&f.rep, &g.rep);
    let traces: Vec<_> = probe_values(&diff, &f.family, w)?
        .into_iter()
        .zip(f.family.probes())
        .map(|(values, p)| trace(p, values, w.epsilon, w))
        .collect();
    let best = traces
        .iter()
        .reduce(|b, t| if t.tail_max > b.tail_max { t } else { b })
        .expect("families are non-empty");
    if best.tail_max < w.epsilon {
        return Err(Error::NotSeparable);
    }
    let half = best.tail_max / 2.0;
    let kept: Vec<(u64, f64)> = best.indexed().filter(|&(_, v)| v >= half).collect();
    let gap = kept.iter().fold(f64::INFINITY, |m, &(_, v)| m.min(v)) / 2.0;
    Ok(SeparationWitness {
        probe: best.probe.clone(),
        gap,
        radius: gap / 4.0,
        indices: kept.into_iter().map(|(i, _)| i).collect(),
    })
}

/// Membership counts of a candidate sweep against the two neighbourhoods of
/// a separation witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DisjointnessReport {
    pub candidates: usize,
    pub near_f: usize,
    pub near_g: usize,
    pub in_both: usize,
}

impl DisjointnessReport {
    pub fn disjoint(&self) -> bool {
        self.in_both == 0
    }
}

/// Checks every candidate against `O_{k/4} f` and `O_{k/4} g`.
pub fn check_disjoint(
    sep: &SeparationWitness,
    f: &HyperElement,
    g: &HyperElement,
    candidates: &[FunSeq],
    w: &Window,
) -> Result<DisjointnessReport> {
    same_family(f, g)?;
    let u = sep.neighbourhood();
    let mut report = DisjointnessReport {
        candidates: candidates.len(),
        ..Default::default()
    };
    for h in candidates {
        let a = in_uniform_nbhd_seq(h, &f.rep, &u, &f.family, w)?.holds();
        let b = in_uniform_nbhd_seq(h, &g.rep, &u, &f.family, w)?.holds();
        report.near_f += a as usize;
        report.near_g += b as usize;
        report.in_both += (a && b) as usize;
    }
    Ok(report)
}

/// Sequences between and around `f` and `g`: mixtures `(1-λ) f + λ g` plus
/// a decaying perturbation `s h / n`, with `h` drawn from `perturbations`.
/// A quarter of the candidates sit at `λ = 0`, a quarter at `λ = 1`.
pub fn candidate_sequences(
    f: &FunSeq,
    g: &FunSeq,
    perturbations: &[Expr],
    count: usize,
    seed: u64,
) -> Vec<FunSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|j| {
            let lambda = match j % 4 {
                0 => 0.0,
                1 => 1.0,
                _ => rng.gen_range(0.0..=1.0),
            };
            let s: f64 = rng.gen_range(-0.5..=0.5);
            let h = &perturbations[rng.gen_range(0..perturbations.len())];
            let mix = seq_add(&seq_scale(1.0 - lambda, f), &seq_scale(lambda, g));
            let bump = FunSeq::Expr(Expr::div(Expr::mul(Expr::real(s), h.clone()), Expr::N));
            seq_add(&mix, &bump)
        })
        .collect()
}
