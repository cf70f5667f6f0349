//! End-to-end scenarios run by `extrafun demo`.

use std::io::Write;

use super::report::{self, Format};
use super::Failure;
use crate::bundle::{
    irregularity_demo, nonadditive_section, section_apply, section_law, sectional_derivative, Section,
};
use crate::expr::parse;
use crate::hyperspace::{hyper_add, project, seq_add, FunSeq, HyperElement, Verdict, Window};
use crate::seminorm::SeminormFamily;
use crate::topology::{candidate_sequences, check_disjoint, separation_witness};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Demo {
    IrregularityCompact,
    IrregularityPointwise,
    NonadditiveSection,
    HausdorffWitness,
    Smoothing,
}

/// Runs a demo; returns whether the expected pattern was reproduced.
pub fn run_demo(
    demo: Demo,
    window: Option<Window>,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> std::result::Result<bool, Failure> {
    match demo {
        Demo::IrregularityCompact | Demo::IrregularityPointwise => {
            let q = if demo == Demo::IrregularityCompact {
                SeminormFamily::compact_sup(&[(0.0, 1.0)], 1001)?
            } else {
                SeminormFamily::pointwise(&[0.3, 1.1])?
            };
            let w = window.unwrap_or_default();
            let r = irregularity_demo(&q, &w)?;
            let expected = r.pattern() == (Verdict::Holds, Verdict::Fails);
            report::fields(
                out,
                format,
                &[
                    ("family", q.to_string()),
                    ("window", w.to_string()),
                    ("f", "(1/2)^n*sin(2^n*x)".into()),
                    ("g", "0".into()),
                    ("f ~ g", r.classes.verdict.to_string()),
                    ("df ~ dg", r.derivatives.verdict.to_string()),
                    ("expected", "Holds, Fails".into()),
                    ("reproduced", expected.to_string()),
                ],
            )?;
            if format == Format::Text {
                report::decision(out, format, "f ~ g", &r.classes)?;
                report::decision(out, format, "df ~ dg", &r.derivatives)?;
            }
            Ok(expected)
        }
        Demo::NonadditiveSection => {
            let r = nonadditive_section();
            let one = HyperElement::hn(FunSeq::parse("1")?)?;
            let two = HyperElement::hn(FunSeq::parse("2")?)?;
            let sum = seq_add(&section_apply(&r, &one)?, &section_apply(&r, &one)?);
            let direct = section_apply(&r, &hyper_add(&one, &one)?)?;
            let of_two = section_apply(&r, &two)?;
            let mut rows = vec![("section", r.to_string())];
            let mut first = None;
            let labels: Vec<String> = (1..=6).map(|i| format!("i={i}")).collect();
            for (i, label) in (1..=6u64).zip(&labels) {
                let (a, b) = (sum.eval(i, 0.0)?, of_two.eval(i, 0.0)?);
                if first.is_none() && a != b {
                    first = Some(i);
                }
                rows.push((label.as_str(), format!("r(1)+r(1) = {a}, r(2) = {b}")));
            }
            let same_class = section_law(&r, &two, &Window::hypernumber())?.holds();
            let sum_law = direct.eval(1, 0.0)? == of_two.eval(1, 0.0)?;
            rows.push((
                "first differing index",
                first.map_or("none".into(), |i| i.to_string()),
            ));
            rows.push(("r(2) in class of 2", same_class.to_string()));
            let reproduced = first.is_some() && same_class && sum_law;
            rows.push(("reproduced", reproduced.to_string()));
            report::fields(out, format, &rows)?;
            Ok(reproduced)
        }
        Demo::HausdorffWitness => {
            let q = SeminormFamily::compact_sup(&[(0.0, 1.0)], 1001)?;
            let w = window.unwrap_or_default();
            let f = HyperElement::zero(&q);
            let g = project(FunSeq::parse("cos(2^n*x)")?, &q);
            let sep = separation_witness(&f, &g, &w)?;
            let bumps = vec![parse("1")?, parse("x")?, parse("sin(3*x)")?];
            let cands = candidate_sequences(&f.rep, &g.rep, &bumps, 100, seed);
            let d = check_disjoint(&sep, &f, &g, &cands, &w)?;
            report::fields(
                out,
                format,
                &[
                    ("F", f.to_string()),
                    ("G", g.to_string()),
                    ("probe", sep.probe.to_string()),
                    ("gap k", format!("{:.6}", sep.gap)),
                    ("radius k/4", format!("{:.6}", sep.radius)),
                    (
                        "witness indices",
                        format!("{} in {}..={}", sep.indices.len(), w.start, w.end),
                    ),
                    ("candidates", d.candidates.to_string()),
                    ("near F", d.near_f.to_string()),
                    ("near G", d.near_g.to_string()),
                    ("in both", d.in_both.to_string()),
                    ("disjoint", d.disjoint().to_string()),
                ],
            )?;
            Ok(d.disjoint())
        }
        Demo::Smoothing => {
            let q = SeminormFamily::compact_sup(&[(-1.0, 1.0)], 1001)?;
            let w = window.unwrap_or_default();
            let r = Section::default_smoothing();
            let f = project(FunSeq::parse("sin(x)")?, &q);
            let s = section_apply(&r, &f)?;
            let mut rows = vec![("section", r.to_string()), ("F", f.to_string())];
            let labels: Vec<String> = (4..=12).map(|i| format!("i={i} sup error on [-1,1]")).collect();
            let mut ok = true;
            for (i, label) in (4..=12u64).zip(&labels) {
                let err = (0..=2000)
                    .map(|j| {
                        let x = -1.0 + j as f64 / 1000.0;
                        Ok((s.eval(i, x)? - x.sin()).abs())
                    })
                    .collect::<Result<Vec<f64>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                if i >= 8 {
                    ok &= err < 1e-3;
                }
                rows.push((label.as_str(), format!("{err:.3e}")));
            }
            let law = section_law(&r, &f, &w)?;
            let derivative = sectional_derivative(&r, &f, 1000)?;
            let cos = project(FunSeq::parse("cos(x)")?, &q);
            let deriv_ok = derivative.equals(&cos, &w)?;
            rows.push(("section law", law.verdict.to_string()));
            rows.push(("derivative ~ cos(x)", deriv_ok.verdict.to_string()));
            ok &= law.holds() && deriv_ok.holds();
            rows.push(("reproduced", ok.to_string()));
            report::fields(out, format, &rows)?;
            Ok(ok)
        }
    }
}
