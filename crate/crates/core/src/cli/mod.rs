//! Command-line front end: argument parsing, dispatch and reports.

pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{CocenterVector, HeckeElt};
use crate::newton::{Conjugator, NewtonPair, PivotOrder, ReductionResult};
use crate::setting::Setting;
use crate::weyl::ExtAffElt;
use config::{load_config, Format, SessionConfig};
use report::{render_json, render_text, Graph};

#[derive(Debug, Parser)]
#[command(name = "strata", version, about = "Twisted conjugacy classes, Newton strata and Hecke cocenters of extended affine Weyl groups")]
pub struct Cli {
    /// Output format (overrides the config file).
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DatumArg {
    /// Session config file (TOML).
    #[arg(long)]
    pub datum: PathBuf,
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    #[command(flatten)]
    pub datum: DatumArg,
    /// Element as whitespace-separated tokens, e.g. "s0 s1" or "" for the identity.
    #[arg(long, allow_hyphen_values = true)]
    pub element: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton pair, straightness and minimality of an element.
    Classify(ElementArgs),
    /// Reduce an element to minimal length by twisted conjugation.
    Reduce(ElementArgs),
    /// All minimal elements sharing the Newton pair of an element.
    Fiber(ElementArgs),
    /// Standard triples for the Newton pair of an element.
    Triples(ElementArgs),
    /// Image of T_w in the twisted cocenter.
    Cocenter {
        #[command(flatten)]
        args: ElementArgs,
        /// Pivot strategy: default or reversed.
        #[arg(long, default_value = "default")]
        pivot: String,
    },
    /// Newton grading of the cocenter image of T_w.
    Grade(ElementArgs),
    /// Compare the cocenter images of T_x·T_y and T_y·T_θ(x).
    TraceCheck {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Standard pairs (K, τ) for a list of length-zero elements.
    RigidPairs {
        #[command(flatten)]
        datum: DatumArg,
        /// Length-zero elements; defaults to every torsion element of Ω.
        #[arg(long = "tau")]
        taus: Vec<String>,
    },
    /// The standard pair covering a minimal element with central Newton point.
    RigidCover(ElementArgs),
    /// Minimal length (W_K, W_K′) double coset representatives in a ball.
    Dcosets {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        k2: Vec<usize>,
        /// Length bound (defaults to bounds.ball_radius).
        #[arg(long, allow_hyphen_values = true)]
        bound: Option<i64>,
        #[arg(long = "tau")]
        taus: Vec<String>,
    },
    /// Maximal length of a longest element of a finite parabolic subgroup.
    Nmax(DatumArg),
    /// Regenerate the oracle golden fixtures.
    Fixtures {
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

struct Session {
    setting: Setting,
    config: SessionConfig,
    format: Format,
}

fn open(datum: &DatumArg, format: &Option<String>) -> Result<Session> {
    let config = load_config(&datum.datum)?;
    let format = match format {
        Some(f) => f.parse()?,
        None => config.output.format,
    };
    let setting = config.setting()?;
    Ok(Session { setting, config, format })
}

pub fn rat_vec(v: &[Rational64]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Parses a rational vector in the `[a, b/c]` text form.
pub fn parse_rat_vec(s: &str) -> Result<Vec<Rational64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Cli(format!("cannot parse vector `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<Rational64>().map_err(|_| Error::Cli(format!("cannot parse vector `{s}`"))))
        .collect()
}

fn pair_json(p: &NewtonPair) -> Value {
    json!({ "kappa": p.kappa, "nu_bar": rat_vec(&p.nu_bar) })
}

fn elems(st: &Setting, v: &[ExtAffElt]) -> Value {
    Value::Array(v.iter().map(|w| Value::String(st.format_element(w))).collect())
}

/// The `classify` report for `w`.
pub fn classify_report(st: &Setting, w: &ExtAffElt) -> Value {
    let np = st.newton_point(w);
    let red = st.reduce_to_min(w);
    json!({
        "element": st.format_element(w),
        "length": st.length(w),
        "kappa": st.kappa(w),
        "nu": rat_vec(&np.nu),
        "nu_bar": rat_vec(&np.nu_bar),
        "witness_power": np.witness_power,
        "straight": st.is_straight(w),
        "minimal": st.is_minimal(w),
        "class_label": st.format_element(&red.class_label),
        "rigid": st.is_rigid(&st.pi(w)),
    })
}

/// The `reduce` report for `w` and its reduction `r`.
pub fn reduce_report(st: &Setting, w: &ExtAffElt, r: &ReductionResult) -> Value {
    let path: Vec<Value> = r
        .path
        .iter()
        .map(|p| {
            json!({
                "conjugator": conj_token(st, &p.conjugator),
                "from": st.format_element(&p.from),
                "to": st.format_element(&p.to),
                "length_change": p.length_change,
            })
        })
        .collect();
    json!({
        "element": st.format_element(w),
        "length": st.length(w),
        "minimal_element": st.format_element(&r.minimal_element),
        "minimal_length": st.length(&r.minimal_element),
        "class_label": st.format_element(&r.class_label),
        "path": path,
    })
}

/// Cocenter terms as `{label, coeff}` objects in ShortLex label order.
pub fn cocenter_json(st: &Setting, cv: &CocenterVector) -> Value {
    Value::Array(
        cv.sorted_terms(&st.datum)
            .into_iter()
            .map(|(k, c)| json!({ "label": st.format_element(k), "coeff": c.to_string() }))
            .collect(),
    )
}

fn conj_token(st: &Setting, c: &Conjugator) -> String {
    match c {
        Conjugator::Simple(i) => format!("s{i}"),
        Conjugator::Element(x) => st.format_element(x),
    }
}

fn emit(format: Format, v: &Value) -> Result<String> {
    match format {
        Format::Text => Ok(render_text(v)),
        Format::Structured => Ok(render_json(v)),
        Format::Dot => Err(Error::Cli("--format dot is only available for reduce and fiber".into())),
    }
}

fn taus_or_default(st: &Setting, taus: &[String]) -> Result<Vec<ExtAffElt>> {
    if taus.is_empty() {
        return Ok(st.datum.torsion_omega());
    }
    taus.iter().map(|t| st.parse_element(t)).collect()
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// complete report. Nothing is printed, so a failure never leaves a
/// partial report behind.
pub fn run<I, T>(argv: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(e.to_string()),
                _ => Err(Error::Cli(e.to_string().trim_end().to_string())),
            };
        }
    };
    let fmt = cli.format.clone();
    match &cli.command {
        Command::Classify(a) => {
            let s = open(&a.datum, &fmt)?;
            let st = &s.setting;
            let w = st.parse_element(&a.element)?;
            emit(s.format, &classify_report(st, &w))
        }
        Command::Reduce(a) => {
            let s = open(&a.datum, &fmt)?;
            let st = &s.setting;
            let w = st.parse_element(&a.element)?;
            let r = st.reduce_to_min(&w);
            if s.format == Format::Dot {
                let mut g = Graph::default();
                g.node(&st.format_element(&w));
                for step in &r.path {
                    let a = g.node(&st.format_element(&step.from));
                    let b = g.node(&st.format_element(&step.to));
                    g.edges.push((a, b, step.length_change < 0, conj_token(st, &step.conjugator)));
                }
                return Ok(g.render("reduction"));
            }
            emit(s.format, &reduce_report(st, &w, &r))
        }
        Command::Fiber(a) => {
            let s = open(&a.datum, &fmt)?;
            let st = &s.setting;
            let w = st.parse_element(&a.element)?;
            let f = st.fiber_min(&w);
            if s.format == Format::Dot {
                let mut g = Graph::default();
                let all = f.minimal_elements();
                for c in &f.classes {
                    let ids = c.minimal_elements.iter().map(|m| g.node(&st.format_element(m))).collect();
                    g.clusters.push((st.format_element(&c.label), ids));
                }
                for m in &all {
                    let a = g.node(&st.format_element(m));
                    for i in 0..st.datum.num_generators() {
                        let z = st.simple_move(i, m);
                        if z != *m && all.contains(&z) {
                            let b = g.node(&st.format_element(&z));
                            g.edges.push((a, b, false, format!("s{i}")));
                        }
                    }
                }
                return Ok(g.render("fiber"));
            }
            let classes: Vec<Value> = f
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "label": st.format_element(&c.label),
                        "straight": c.straight,
                        "minimal_elements": elems(st, &c.minimal_elements),
                    })
                })
                .collect();
            let v = json!({
                "nu_bar": rat_vec(&f.nu.nu_bar),
                "kappa": f.nu.kappa,
                "classes": classes,
                "N_nu": f.n_nu,
            });
            emit(s.format, &v)
        }
        Command::Triples(a) => {
            let s = open(&a.datum, &fmt)?;
            let st = &s.setting;
            let w = st.parse_element(&a.element)?;
            let ts = st.standard_triples(&w)?;
            let triples: Vec<Value> = ts
                .iter()
                .map(|t| {
                    json!({
                        "x": st.format_element(&t.x),
                        "K": t.k,
                        "u": st.format_element(&t.u),
                        "product": st.format_element(&t.product()),
                    })
                })
                .collect();
            let v = json!({ "newton_pair": pair_json(&st.pi(&w)), "triples": triples });
            emit(s.format, &v)
        }
        Command::Cocenter { args, pivot } => {
            let s = open(&args.datum, &fmt)?;
            let st = &s.setting;
            let order = match pivot.as_str() {
                "default" => PivotOrder::Default,
                "reversed" => PivotOrder::Reversed,
                other => return Err(Error::Cli(format!("unknown pivot strategy `{other}`"))),
            };
            let w = st.parse_element(&args.element)?;
            let cv = st.cocenter_reduce_with(&HeckeElt::basis(w), order);
            match s.format {
                Format::Text => Ok(st.format_cocenter(&cv) + "\n"),
                f => emit(f, &json!({ "terms": cocenter_json(st, &cv) })),
            }
        }
        Command::Grade(a) => {
            let s = open(&a.datum, &fmt)?;
            let st = &s.setting;
            let w = st.parse_element(&a.element)?;
            let cv = st.cocenter_reduce(&HeckeElt::basis(w));
            let components: Vec<Value> = st
                .newton_grade(&cv)
                .iter()
                .map(|(p, c)| json!({ "kappa": p.kappa, "nu_bar": rat_vec(&p.nu_bar), "terms": cocenter_json(st, c) }))
                .collect();
            emit(s.format, &json!({ "components": components }))
        }
        Command::TraceCheck { datum, x, y } => {
            let s = open(datum, &fmt)?;
            let st = &s.setting;
            let (x, y) = (st.parse_element(x)?, st.parse_element(y)?);
            let t = st.trace_check(&x, &y);
            emit(s.format, &json!({ "agree": t.agree, "discrepancy": cocenter_json(st, &t.discrepancy) }))
        }
        Command::RigidPairs { datum, taus } => {
            let s = open(datum, &fmt)?;
            let st = &s.setting;
            let taus = taus_or_default(st, taus)?;
            let pairs: Vec<Value> = st
                .standard_pairs(&taus)?
                .iter()
                .map(|p| json!({ "K": p.k, "tau": st.format_element(&p.tau) }))
                .collect();
            emit(s.format, &json!({ "pairs": pairs }))
        }
        Command::RigidCover(a) => {
            let s = open(&a.datum, &fmt)?;
            let st = &s.setting;
            let w = st.parse_element(&a.element)?;
            let p = st.rigid_cover(&w)?;
            let v = json!({
                "covers": [{ "element": st.format_element(&w), "pair": { "K": p.k, "tau": st.format_element(&p.tau) } }]
            });
            emit(s.format, &v)
        }
        Command::Dcosets { datum, k, k2, bound, taus } => {
            let s = open(datum, &fmt)?;
            let st = &s.setting;
            let taus = taus_or_default(st, taus)?;
            let bound = bound.unwrap_or(s.config.bounds.ball_radius);
            let reps = st.double_coset_reps(k, k2, bound, &taus)?;
            emit(s.format, &json!({ "reps": elems(st, &reps) }))
        }
        Command::Nmax(d) => {
            let s = open(d, &fmt)?;
            emit(s.format, &json!({ "nmax": s.setting.nmax() }))
        }
        Command::Fixtures { out } => {
            std::fs::create_dir_all(out).map_err(|e| Error::Cli(format!("cannot create `{}`: {e}", out.display())))?;
            let path = out.join("oracle_goldens.json");
            let v = crate::oracle::generate_fixtures();
            std::fs::write(&path, render_json(&v))
                .map_err(|e| Error::Cli(format!("cannot write `{}`: {e}", path.display())))?;
            Ok(format!("wrote {}\n", path.display()))
        }
    }
}
