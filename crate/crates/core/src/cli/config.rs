//! Run configuration read from TOML. Unknown keys are rejected.
//!
//! ```toml
//! f = { kind = "expr", src = "(1/2)^n*sin(2^n*x)" }
//! g = { kind = "list", head = ["x", "x^2"], tail = "0" }
//!
//! [family]
//! kind = "compact-sup"
//! intervals = [[0, 1], [-2, 2]]
//! grid = 1001
//!
//! [window]
//! start = 8
//! end = 64
//! epsilon = 1e-6
//!
//! [section]
//! kind = "smoothing"
//! cap = 16384
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::bundle::{Approximant, BasisEntry, Section, SMOOTHING_CAP};
use crate::expr::parse;
use crate::hyperspace::{project, FunSeq, HyperElement, Window};
use crate::seminorm::{SeminormFamily, DEFAULT_GRID, DEFAULT_QUAD_NODES};
use crate::{Error, Result};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub f: Option<SeqSpec>,
    pub g: Option<SeqSpec>,
    pub family: Option<FamilySpec>,
    pub window: Option<WindowSpec>,
    pub section: Option<SectionSpec>,
    pub diff: Option<DiffSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SeqSpec {
    Expr { src: String },
    List { head: Vec<String>, tail: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilySpec {
    Pointwise {
        points: Vec<f64>,
    },
    CompactSup {
        intervals: Vec<(f64, f64)>,
        grid: Option<usize>,
    },
    TestIntegral {
        tests: Vec<TestFnSpec>,
        nodes: Option<usize>,
    },
    Abs {},
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestFnSpec {
    pub g: String,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub start: u64,
    pub end: u64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SectionSpec {
    Rep {},
    BasisLinear {
        basis: Vec<BasisSpec>,
    },
    Smoothing {
        cap: Option<usize>,
        scale: Option<f64>,
        approximant: Option<ApproximantSpec>,
    },
    Patched {
        overrides: Vec<OverrideSpec>,
    },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproximantSpec {
    Auto,
    Bernstein,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub label: String,
    pub class: SeqSpec,
    pub rep: Option<SeqSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideSpec {
    pub class: SeqSpec,
    pub rep: SeqSpec,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffSpec {
    pub indices: Option<Vec<u64>>,
    pub max_scan: Option<u64>,
    pub compare: Option<SeqSpec>,
    /// Presentation of the differentiated element in a basis-linear section.
    pub element: Option<Vec<CoefSpec>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefSpec {
    pub label: String,
    pub coef: f64,
}

impl RunConfig {
    pub fn from_toml(src: &str) -> Result<RunConfig> {
        toml::from_str(src).map_err(|e| Error::InvalidArgument(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_toml(&src)
    }

    /// The configured family, or sup on `[0, 1]`.
    pub fn family(&self) -> Result<SeminormFamily> {
        match &self.family {
            Some(spec) => spec.build(),
            None => SeminormFamily::compact_sup(&[(0.0, 1.0)], DEFAULT_GRID),
        }
    }

    /// The configured window, or the default for the family.
    pub fn window(&self, q: &SeminormFamily) -> Result<Window> {
        match self.window {
            Some(w) => Window::new(w.start, w.end, w.epsilon),
            None => Ok(Window::for_family(q)),
        }
    }
}

impl SeqSpec {
    pub fn build(&self) -> Result<FunSeq> {
        match self {
            SeqSpec::Expr { src } => Ok(FunSeq::Expr(parse(src)?)),
            SeqSpec::List { head, tail } => Ok(FunSeq::list(
                head.iter().map(|h| parse(h)).collect::<Result<_>>()?,
                parse(tail)?,
            )),
        }
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<SeminormFamily> {
        match self {
            FamilySpec::Pointwise { points } => SeminormFamily::pointwise(points),
            FamilySpec::CompactSup { intervals, grid } => {
                SeminormFamily::compact_sup(intervals, grid.unwrap_or(DEFAULT_GRID))
            }
            FamilySpec::TestIntegral { tests, nodes } => {
                let tests = tests
                    .iter()
                    .map(|t| Ok((parse(&t.g)?, t.a, t.b)))
                    .collect::<Result<Vec<_>>>()?;
                SeminormFamily::test_integral(tests, nodes.unwrap_or(DEFAULT_QUAD_NODES))
            }
            FamilySpec::Abs {} => Ok(SeminormFamily::abs()),
        }
    }

    /// Short command-line form: `abs`, `pointwise:0.3,1.1` or
    /// `compact-sup:0:1,-2:2`.
    pub fn parse_flag(s: &str) -> Result<FamilySpec> {
        let bad = || Error::InvalidArgument(format!("unrecognised family `{s}`"));
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad());
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "abs" if rest.is_empty() => Ok(FamilySpec::Abs {}),
            "pointwise" => Ok(FamilySpec::Pointwise {
                points: rest.split(',').map(num).collect::<Result<_>>()?,
            }),
            "compact-sup" => {
                let intervals = rest
                    .split(',')
                    .map(|pair| {
                        let (a, b) = pair.split_once(':').ok_or_else(bad)?;
                        Ok((num(a)?, num(b)?))
                    })
                    .collect::<Result<_>>()?;
                Ok(FamilySpec::CompactSup {
                    intervals,
                    grid: None,
                })
            }
            _ => Err(bad()),
        }
    }
}

impl SectionSpec {
    pub fn build(&self, q: &SeminormFamily, w: &Window) -> Result<Section> {
        match self {
            SectionSpec::Rep {} => Ok(Section::Rep),
            SectionSpec::BasisLinear { basis } => {
                let entries = basis
                    .iter()
                    .map(|b| {
                        let class = b.class.build()?;
                        let rep = match &b.rep {
                            Some(r) => r.build()?,
                            None => class.clone(),
                        };
                        Ok(BasisEntry::new(b.label.clone(), project(class, q), rep))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Section::basis_linear(entries, w)
            }
            SectionSpec::Smoothing {
                cap,
                scale,
                approximant,
            } => Section::smoothing(
                scale.unwrap_or(1.0),
                cap.unwrap_or(SMOOTHING_CAP),
                match approximant {
                    Some(ApproximantSpec::Bernstein) => Approximant::Bernstein,
                    _ => Approximant::Auto,
                },
            ),
            SectionSpec::Patched { overrides } => {
                let overrides = overrides
                    .iter()
                    .map(|o| Ok((project(o.class.build()?, q), o.rep.build()?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Section::patched(Section::Rep, overrides, *w))
            }
        }
    }
}

/// The element named by a basis presentation: its representative is the
/// combination of the basis class representatives.
pub fn combination_element(
    basis: &[BasisSpec],
    element: &[CoefSpec],
    q: &SeminormFamily,
) -> Result<HyperElement> {
    let mut rep = FunSeq::zero();
    for c in element {
        let b = basis
            .iter()
            .find(|b| b.label == c.label)
            .ok_or_else(|| Error::OutOfDomain(format!("`{}` is not a basis label", c.label)))?;
        rep = crate::hyperspace::seq_add(&rep, &crate::hyperspace::seq_scale(c.coef, &b.class.build()?));
    }
    Ok(project(rep, q).with_combination(element.iter().map(|c| (c.label.clone(), c.coef)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_parses() {
        let cfg = RunConfig::from_toml(
            r#"
            f = { kind = "expr", src = "(1/2)^n*sin(2^n*x)" }
            g = { kind = "list", head = ["x", "x^2"], tail = "0" }

            [family]
            kind = "compact-sup"
            intervals = [[0, 1], [-2, 2]]
            grid = 513

            [window]
            start = 4
            end = 40
            epsilon = 1e-5

            [section]
            kind = "smoothing"
            cap = 1024
            "#,
        )
        .unwrap();
        let q = cfg.family().unwrap();
        assert_eq!(q.probes().len(), 2);
        assert_eq!(cfg.window(&q).unwrap(), Window::new(4, 40, 1e-5).unwrap());
        assert_eq!(cfg.g.unwrap().build().unwrap().eval(2, 3.0).unwrap(), 9.0);
        let r = cfg.section.unwrap().build(&q, &Window::default()).unwrap();
        assert!(matches!(r, Section::Smoothing { cap: 1024, .. }));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_toml("colour = 1").is_err());
        assert!(RunConfig::from_toml("[window]\nstart = 1\nend = 4\nepsilon = 0.1\nstep = 2").is_err());
        assert!(RunConfig::from_toml("f = { kind = \"expr\", src = \"x\", extra = 1 }").is_err());
        assert!(RunConfig::from_toml("[family]\nkind = \"abs\"\npoints = [1.0]").is_err());
        assert!(RunConfig::from_toml("[section]\nkind = \"rep\"\ncap = 3").is_err());
    }

    #[test]
    fn defaults_follow_the_family() {
        let cfg = RunConfig::from_toml("[family]\nkind = \"abs\"").unwrap();
        let q = cfg.family().unwrap();
        assert_eq!(cfg.window(&q).unwrap(), Window::hypernumber());
        let cfg = RunConfig::default();
        assert_eq!(cfg.window(&cfg.family().unwrap()).unwrap(), Window::default());
    }

    #[test]
    fn family_flags() {
        let q = FamilySpec::parse_flag("pointwise:0.3,1.1")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(q.probes().len(), 2);
        let q = FamilySpec::parse_flag("compact-sup:0:1,-2:2")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(q.probes().len(), 2);
        assert!(matches!(
            FamilySpec::parse_flag("abs").unwrap(),
            FamilySpec::Abs {}
        ));
        assert!(FamilySpec::parse_flag("sup:0:1").is_err());
        assert!(FamilySpec::parse_flag("compact-sup:0").is_err());
    }
}
