//! Property suites run by `extrafun check` over built-in fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::PropertyRow;
use crate::bundle::{
    check_linearity, check_shift, conjugate_ad, conjugate_mt, nonadditive_section, section_additivity,
    section_apply, section_homogeneity, section_law, sectional_derivative, BasisEntry, Section,
};
use crate::expr::{parse, Expr};
use crate::hyperspace::{
    equivalent, hyper_add, hyper_scale, is_stable_element, null_check, project, seq_add, seq_scale, FunSeq,
    HyperElement, Verdict, Window,
};
use crate::seminorm::{seminorm_value, Probe, SeminormFamily};
use crate::topology::{
    candidate_sequences, check_disjoint, in_local_nbhd_seq, in_uniform_nbhd_seq, separation_witness,
    LocalRadii, UniformRadius,
};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    SeminormAxioms,
    VectorLaws,
    TopologyStrength,
    SectionLaws,
    All,
}

/// Sequences used across the suites; all are evaluable on `[-2, 2]`.
pub const SEQUENCES: [&str; 10] = [
    "x^2",
    "sin(x)",
    "(1/2)^n*sin(2^n*x)",
    "x/n",
    "cos(x) + 1/n",
    "exp(-(x^2))",
    "x^3 - 2*x + 1/n",
    "1/(1 + x^2)",
    "sin(x + 1/n)",
    "abs(x - 1/2)",
];

const SAMPLES: usize = 20;
const MAX_SCAN: u64 = 1000;

pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<PropertyRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::SeminormAxioms => seminorm_axioms(&mut rng),
        Suite::VectorLaws => vector_laws(&mut rng),
        Suite::TopologyStrength => topology_strength(&mut rng),
        Suite::SectionLaws => section_laws(&mut rng),
        Suite::All => {
            let mut rows = seminorm_axioms(&mut rng)?;
            rows.extend(vector_laws(&mut rng)?);
            rows.extend(topology_strength(&mut rng)?);
            rows.extend(section_laws(&mut rng)?);
            Ok(rows)
        }
    }
}

fn seqs() -> Vec<FunSeq> {
    SEQUENCES.iter().map(|s| FunSeq::parse(s).unwrap()).collect()
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty fixture list")
}

fn row(suite: &'static str, property: impl Into<String>, outcomes: &[bool]) -> PropertyRow {
    PropertyRow {
        suite,
        property: property.into(),
        passed: outcomes.iter().filter(|&&b| b).count(),
        total: outcomes.len(),
    }
}

fn axiom_families() -> Result<Vec<SeminormFamily>> {
    Ok(vec![
        SeminormFamily::pointwise(&[-0.7, 0.3, 1.1])?,
        SeminormFamily::compact_sup(&[(0.0, 1.0), (-2.0, 2.0)], 1001)?,
        SeminormFamily::test_integral(
            vec![(parse("exp(-(x^2))")?, -1.0, 1.0), (Expr::one(), 0.0, 1.0)],
            128,
        )?,
    ])
}

fn seminorm_axioms(rng: &mut ChaCha8Rng) -> Result<Vec<PropertyRow>> {
    const SUITE: &str = "seminorm-axioms";
    let corpus: Vec<Expr> = SEQUENCES.iter().map(|s| parse(s).unwrap()).collect();
    let mut rows = Vec::new();
    for q in axiom_families()? {
        let (mut sub, mut hom, mut sym) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..SAMPLES {
            let f = pick(rng, &corpus).clone();
            let g = pick(rng, &corpus).clone();
            let c: f64 = rng.gen_range(-5.0..=5.0);
            let n: u64 = rng.gen_range(1..=10);
            for p in q.probes() {
                let v = |e: &Expr| seminorm_value(p, e, n);
                let (qf, qg) = (v(&f)?, v(&g)?);
                sub.push(v(&Expr::add(f.clone(), g.clone()))? <= qf + qg + 1e-9);
                let scaled = v(&Expr::mul(Expr::real(c), f.clone()))?;
                hom.push((scaled - c.abs() * qf).abs() <= 1e-9 * (1.0 + c.abs() * qf));
                let fg = v(&Expr::sub(f.clone(), g.clone()))?;
                let gf = v(&Expr::sub(g.clone(), f.clone()))?;
                sym.push(fg == gf);
            }
        }
        let kind = q.kind().name();
        rows.push(row(SUITE, format!("subadditivity [{kind}]"), &sub));
        rows.push(row(SUITE, format!("absolute homogeneity [{kind}]"), &hom));
        rows.push(row(SUITE, format!("symmetry q(f-g) = q(g-f) [{kind}]"), &sym));
    }
    let mut mono = Vec::new();
    for f in &corpus {
        let n: u64 = rng.gen_range(1..=10);
        let mut last = 0.0;
        let mut ok = true;
        for k in 4..=12 {
            let v = seminorm_value(&Probe::interval(-2.0, 2.0, (1 << k) + 1)?, f, n)?;
            ok &= v >= last;
            last = v;
        }
        mono.push(ok);
    }
    rows.push(row(SUITE, "grid refinement monotonicity", &mono));
    Ok(rows)
}

fn vector_laws(rng: &mut ChaCha8Rng) -> Result<Vec<PropertyRow>> {
    const SUITE: &str = "vector-laws";
    let q = SeminormFamily::compact_sup(&[(0.0, 1.0), (-2.0, 2.0)], 1001)?;
    let w = Window::default();
    let fixtures = seqs();
    let mut results: Vec<Vec<bool>> = vec![Vec::new(); 6];
    for _ in 0..5 {
        let f = pick(rng, &fixtures);
        let g = pick(rng, &fixtures);
        let h = pick(rng, &fixtures);
        let a: f64 = rng.gen_range(-3.0..=3.0);
        let b: f64 = rng.gen_range(-3.0..=3.0);
        let sides = [
            (seq_add(f, g), seq_add(g, f)),
            (seq_add(f, &seq_add(g, h)), seq_add(&seq_add(f, g), h)),
            (
                seq_scale(a, &seq_add(f, g)),
                seq_add(&seq_scale(a, f), &seq_scale(a, g)),
            ),
            (seq_scale(a + b, f), seq_add(&seq_scale(a, f), &seq_scale(b, f))),
            (seq_scale(a, &seq_scale(b, f)), seq_scale(a * b, f)),
            (seq_scale(1.0, f), f.clone()),
        ];
        for (k, (l, r)) in sides.iter().enumerate() {
            results[k].push(equivalent(l, r, &q, &w)?.holds());
        }
    }
    let names = [
        "(1) F + G = G + F",
        "(2) F + (G + H) = (F + G) + H",
        "(3) a(F + G) = aF + aG",
        "(4) (a + b)F = aF + bF",
        "(5) a(bF) = (ab)F",
        "(6) 1F = F",
    ];
    Ok(names
        .iter()
        .zip(results)
        .map(|(n, r)| row(SUITE, *n, &r))
        .collect())
}

fn not_fails(v: Verdict) -> bool {
    v != Verdict::Fails
}

fn topology_strength(rng: &mut ChaCha8Rng) -> Result<Vec<PropertyRow>> {
    const SUITE: &str = "topology-strength";
    let w = Window::default();
    let big = SeminormFamily::compact_sup(&[(0.0, 1.0), (-2.0, 2.0)], 1001)?;
    let small = SeminormFamily::compact_sup(&[(0.0, 1.0)], 1001)?;
    let fixtures = seqs();
    let bumps: Vec<Expr> = ["1", "x", "sin(3*x)"].iter().map(|s| parse(s).unwrap()).collect();
    let (mut strength, mut mono, mut rep_indep) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..SAMPLES {
        let f = pick(rng, &fixtures).clone();
        let g = if rng.gen_bool(0.5) {
            let s: f64 = rng.gen_range(-1.0..=1.0);
            seq_add(
                &f,
                &FunSeq::Expr(Expr::div(
                    Expr::mul(Expr::real(s), pick(rng, &bumps).clone()),
                    Expr::N,
                )),
            )
        } else {
            pick(rng, &fixtures).clone()
        };
        let r: f64 = rng.gen_range(0.05..=2.0);
        let k = r * rng.gen_range(0.05..=0.5);
        let u = UniformRadius::new(r, k)?;
        let uniform = in_uniform_nbhd_seq(&g, &f, &u, &big, &w)?;
        let radii: Vec<f64> = (0..2).map(|_| r * rng.gen_range(1.0..=1.5)).collect();
        let margins: Vec<f64> = (0..2).map(|_| k * rng.gen_range(0.5..=1.0)).collect();
        let local = in_local_nbhd_seq(&g, &f, &LocalRadii::new(radii)?, &margins, &big, &w)?;
        strength.push(!uniform.holds() || not_fails(local.verdict));
        let narrow = in_uniform_nbhd_seq(&g, &f, &u, &small, &w)?;
        mono.push(!uniform.holds() || not_fails(narrow.verdict));
        let h = pick(rng, &bumps).clone();
        let shifted = seq_add(&f, &FunSeq::Expr(Expr::div(h, Expr::N)));
        let again = in_uniform_nbhd_seq(&g, &shifted, &u, &big, &w)?;
        rep_indep.push(!matches!(
            (uniform.verdict, again.verdict),
            (Verdict::Holds, Verdict::Fails) | (Verdict::Fails, Verdict::Holds)
        ));
    }
    let mut rows = vec![
        row(SUITE, "uniform membership implies local", &strength),
        row(SUITE, "membership under larger family implies smaller", &mono),
        row(SUITE, "representative independence", &rep_indep),
    ];

    let mut non_t0 = Vec::new();
    let f = crate::bundle::decaying_oscillation();
    let zero = FunSeq::zero();
    for q in [small.clone(), SeminormFamily::pointwise(&[0.3, 1.1])?] {
        for r in [0.05, 0.1, 0.5, 1.0] {
            let u = UniformRadius::new(r, r / 2.0)?;
            non_t0.push(in_uniform_nbhd_seq(&zero, &f, &u, &q, &w)?.holds());
            non_t0.push(in_uniform_nbhd_seq(&f, &zero, &u, &q, &w)?.holds());
        }
    }
    rows.push(row(
        SUITE,
        "non-T0: equivalent pair share neighbourhoods",
        &non_t0,
    ));

    let mut hausdorff = Vec::new();
    for (f, g, q) in separation_pairs()? {
        let w = Window::for_family(&q);
        let (f, g) = (project(f, &q), project(g, &q));
        let sep = separation_witness(&f, &g, &w)?;
        let perturb: Vec<Expr> = if q.kind() == crate::seminorm::ProbeKind::Abs {
            vec![Expr::one()]
        } else {
            bumps.clone()
        };
        let cands = candidate_sequences(&f.rep, &g.rep, &perturb, 100, rng.gen());
        hausdorff.push(check_disjoint(&sep, &f, &g, &cands, &w)?.disjoint());
    }
    rows.push(row(
        SUITE,
        "Hausdorff: witness neighbourhoods disjoint",
        &hausdorff,
    ));
    Ok(rows)
}

/// Non-equivalent pairs with the family separating them.
pub fn separation_pairs() -> Result<Vec<(FunSeq, FunSeq, SeminormFamily)>> {
    let unit = SeminormFamily::compact_sup(&[(0.0, 1.0)], 1001)?;
    let s = |src: &str| FunSeq::parse(src);
    Ok(vec![
        (s("0")?, s("cos(2^n*x)")?, unit.clone()),
        (s("1")?, s("2")?, SeminormFamily::abs()),
        (s("x^2")?, s("x")?, unit.clone()),
        (
            s("sin(x)")?,
            s("sin(x) + 1")?,
            SeminormFamily::pointwise(&[0.3, 1.1])?,
        ),
        (
            s("x^n")?,
            s("1")?,
            SeminormFamily::compact_sup(&[(0.0, 2.0)], 1001)?,
        ),
    ])
}

/// Basis of three separated classes on `[0, 1]` with representatives that
/// differ from the class representatives by null sequences.
pub fn basis_section(q: &SeminormFamily, w: &Window) -> Result<Section> {
    let s = |src: &str| FunSeq::parse(src);
    Section::basis_linear(
        vec![
            BasisEntry::new("h1", project(s("x")?, q), s("x + (1/2)^n*sin(2^n*x)")?),
            BasisEntry::new("h2", project(s("sin(x)")?, q), s("sin(x) + x^2*(1/2)^n")?),
            BasisEntry::new("h3", project(s("exp(x)")?, q), s("exp(x)")?),
        ],
        w,
    )
}

pub fn basis_elements(q: &SeminormFamily) -> Result<[HyperElement; 3]> {
    let s = |src: &str| FunSeq::parse(src);
    Ok([
        HyperElement::basis("h1", s("x")?, q),
        HyperElement::basis("h2", s("sin(x)")?, q),
        HyperElement::basis("h3", s("exp(x)")?, q),
    ])
}

fn random_span(rng: &mut ChaCha8Rng, basis: &[HyperElement; 3]) -> Result<HyperElement> {
    let mut acc = hyper_scale(rng.gen_range(-2.0..=2.0), &basis[0]);
    for b in &basis[1..] {
        acc = hyper_add(&acc, &hyper_scale(rng.gen_range(-2.0..=2.0), b))?;
    }
    Ok(acc)
}

fn section_laws(rng: &mut ChaCha8Rng) -> Result<Vec<PropertyRow>> {
    const SUITE: &str = "section-laws";
    let w = Window::default();
    let hw = Window::hypernumber();
    let unit = SeminormFamily::compact_sup(&[(0.0, 1.0)], 1001)?;
    let wide = SeminormFamily::compact_sup(&[(0.0, 1.0), (-2.0, 2.0)], 1001)?;
    let fixtures = seqs();
    let smoothing = Section::default_smoothing();
    let mut rows = Vec::new();

    let mut law = |name: &str, r: &Section, elements: &[HyperElement], w: &Window| -> Result<()> {
        let outcomes = elements
            .iter()
            .map(|f| Ok(section_law(r, f, w)?.holds()))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row(SUITE, format!("section law: {name}"), &outcomes));
        Ok(())
    };
    let classes: Vec<HyperElement> = fixtures.iter().map(|f| project(f.clone(), &wide)).collect();
    law("rep", &Section::Rep, &classes, &w)?;
    law("smoothing", &smoothing, &classes, &w)?;
    law("mt_2(rep)", &conjugate_mt(2.0, Section::Rep)?, &classes, &w)?;
    law(
        "ad_sin(rep)",
        &conjugate_ad(parse("sin(x)")?, Section::Rep)?,
        &classes,
        &w,
    )?;
    let basis = basis_section(&unit, &w)?;
    let elements = basis_elements(&unit)?;
    let span: Vec<HyperElement> = (0..5)
        .map(|_| random_span(rng, &elements))
        .collect::<Result<_>>()?;
    law("basis-linear", &basis, &span, &w)?;
    let patched = nonadditive_section();
    let numbers: Vec<HyperElement> = ["1", "2", "2 + 1/n^2", "3 - 1/n"]
        .iter()
        .map(|s| HyperElement::hn(FunSeq::parse(s).unwrap()))
        .collect::<Result<_>>()?;
    law("patched", &patched, &numbers, &hw)?;

    let mut add = Vec::new();
    let mut hom = Vec::new();
    for _ in 0..5 {
        let f = random_span(rng, &elements)?;
        let g = random_span(rng, &elements)?;
        add.push(check_linearity(&basis, &f, &g, 1.0, 1.0, MAX_SCAN, &w)?.holds());
        let c: f64 = rng.gen_range(-4.0..=4.0);
        hom.push(check_linearity(&basis, &f, &f, c, 0.0, MAX_SCAN, &w)?.holds());
    }
    rows.push(row(SUITE, "derivative additivity: basis-linear", &add));
    rows.push(row(SUITE, "derivative homogeneity: basis-linear", &hom));

    let one = &numbers[0];
    let patched_add = section_additivity(&patched, one, one, &hw)?;
    rows.push(row(
        SUITE,
        "patched section is not additive",
        &[patched_add.fails()],
    ));
    let patched_hom = section_homogeneity(&patched, one, 2.0, &hw)?;
    rows.push(row(
        SUITE,
        "patched section is not uniform",
        &[patched_hom.fails()],
    ));

    let mut commute = Vec::new();
    for f in classes.iter().take(5) {
        let a: f64 = rng.gen_range(0.5..=3.0);
        commute.push(check_linearity(&Section::Rep, f, f, a, 0.0, MAX_SCAN, &w)?.holds());
        commute.push(check_shift(&Section::Rep, f, &parse("sin(x)")?, MAX_SCAN, &w)?.holds());
    }
    rows.push(row(SUITE, "commutation with mt_a and ad_e: rep", &commute));

    let mut constants = Vec::new();
    for src in [
        "5",
        "-2",
        "pi",
        "1/3",
        "exp(1)",
        "2 + 1/n",
        "3 - 1/n^2",
        "(1/2)^n",
        "7*n/(n + 1)",
        "log(2)",
    ] {
        let f = FunSeq::parse(src)?;
        let d = sectional_derivative(&Section::Rep, &project(f.clone(), &unit), MAX_SCAN)?;
        constants.push(null_check(&d.rep, &unit, &w)?.holds());
        let d = sectional_derivative(&smoothing, &project(f, &unit), MAX_SCAN)?;
        constants.push(null_check(&d.rep, &unit, &w)?.holds());
    }
    rows.push(row(SUITE, "constant sequences have zero derivative", &constants));

    let mut stable = Vec::new();
    for f in fixtures
        .iter()
        .filter(|f| f.is_stable() && f.differentiable_from().is_some())
    {
        let d = sectional_derivative(&Section::Rep, &project(f.clone(), &wide), MAX_SCAN)?;
        stable.push(is_stable_element(&d, &w)?.holds());
    }
    rows.push(row(SUITE, "derivative of a stable element is stable", &stable));

    let defined = classes
        .iter()
        .map(|f| sectional_derivative(&smoothing, f, MAX_SCAN).is_ok())
        .collect::<Vec<_>>();
    rows.push(row(SUITE, "smoothing section derivative is defined", &defined));

    let twin = basis_section(&unit, &w)?;
    let mut unique = Vec::new();
    for f in &span {
        let (a, b) = (section_apply(&basis, f)?, section_apply(&twin, f)?);
        let mut same = true;
        for i in 1..=w.end {
            for x in [0.0, 0.37, 1.0] {
                same &= a.eval(i, x)? == b.eval(i, x)?;
            }
        }
        unique.push(same);
    }
    rows.push(row(SUITE, "basis-linear extension is unique", &unique));
    Ok(rows)
}
