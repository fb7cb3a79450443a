use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmcurve::couplings::{parse_couplings, CouplingSpec};
use mmcurve::fat::{correlators_from_resolvent, fat_fn_virasoro, fat_frame, fat_resolvent_closed};
use mmcurve::lagrange::{invert_composition_formula, invert_fixed_point, j_from_phi, InversionProblem};
use mmcurve::onecut::{solve_one_cut, CutMethod};
use mmcurve::sequences::all_identities;
use mmcurve::series::rational::parse_rational;
use mmcurve::suites::{run_suite, SUITES};
use mmcurve::thin::{thin_deformation, thin_frame, thin_z_of_v, thin_z_of_v_composition};
use mmcurve::{Error, PSeries, Rational, TruncationPolicy, VarTable};

mod output;

use output::{Format, Named, Report};

#[derive(Parser, Debug)]
#[command(name = "mmcurve", version, about = "Exact genus-zero spectral curves as truncated power series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Comma list of `gK` (symbolic) or `gK=p/q` (numeric).
    #[arg(long, default_value = "")]
    couplings: String,
    /// Total coupling degree kept.
    #[arg(long, default_value_t = 4)]
    degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Show powers of `N` as powers of `(2N)`.
    #[arg(long)]
    two_n: bool,
    /// Post-hoc values for `N` and `t`, e.g. `N=1/2,t=3`.
    #[arg(long)]
    subst: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    H,
    System,
    Even,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Inversion {
    FixedPoint,
    Composition,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Thin special deformation `z(v)`.
    ThinZ {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Inversion::FixedPoint)]
        via: Inversion,
    },
    /// Thin curve `Y = √2·y`, `I_0` and the tail `f_n = N·I_0^n`.
    ThinCurve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        tail: u32,
    },
    /// Fat correlators `f_0..f_nmax` from the Virasoro recursion.
    FatFn {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Fat resolvent `ω` from the closed square-root form.
    FatResolvent {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// One-cut data: endpoints, `Q(z)` and the re-expanded `f_n`.
    OneCut {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::H)]
        method: Method,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Lagrange inversion of `v = w/φ(w)` for `φ` given by its coefficients.
    Invert {
        /// Coefficients of `w^0, w^1, …` as `p/q`, comma separated.
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Inversion::FixedPoint)]
        via: Inversion,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Run a golden suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Generating-function identities.
    IdentityCheck {
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Domain(_) | Error::Precondition(_) | Error::Scope(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Report { text, passed }) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("mmcurve: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("mmcurve: {m}");
            ExitCode::from(1)
        }
    }
}

fn threads() -> usize {
    let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var("MMCURVE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(n) if n >= 1 => n.min(avail),
        _ => avail,
    }
}

struct Setup {
    indices: Vec<usize>,
    numeric: Vec<(String, Rational)>,
}

fn setup(c: &Common) -> Result<Setup, Failure> {
    let specs: Vec<CouplingSpec> = parse_couplings(&c.couplings)?;
    let indices = specs.iter().map(|s| s.index).collect();
    let mut numeric: Vec<(String, Rational)> =
        specs.iter().filter_map(|s| s.value.clone().map(|v| (format!("g{}", s.index), v))).collect();
    if let Some(text) = &c.subst {
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Failure::Usage(format!("bad substitution `{tok}`: expected N=p/q or t=p/q"));
            let (name, value) = tok.split_once('=').ok_or_else(bad)?;
            let name = name.trim();
            if name != "N" && name != "t" {
                return Err(bad());
            }
            numeric.push((name.to_string(), parse_rational(value.trim()).map_err(|_| bad())?));
        }
    }
    Ok(Setup { indices, numeric })
}

/// Sets every numeric variable that the series' table knows.
fn finish(s: &PSeries, setup: &Setup) -> Result<PSeries, Failure> {
    let mut out = s.clone();
    for (name, value) in &setup.numeric {
        if out.table().index(name).is_some() {
            out = out.evaluate(name, value)?;
        }
    }
    Ok(out)
}

fn named(list: Vec<(String, PSeries)>, setup: &Setup) -> Result<Vec<Named>, Failure> {
    list.into_iter().map(|(name, s)| Ok(Named { name, series: finish(&s, setup)? })).collect()
}

fn run(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::ThinZ { common, order, via } => {
            let st = setup(&common)?;
            let frame = thin_frame(&st.indices, common.degree)?;
            let z = match via {
                Inversion::FixedPoint => thin_z_of_v(&frame, order, common.degree)?,
                Inversion::Composition => thin_z_of_v_composition(&frame, order, common.degree)?,
            };
            Ok(output::render(&named(vec![("z".into(), z)], &st)?, common.format, common.two_n))
        }
        Command::ThinCurve { common, tail } => {
            let st = setup(&common)?;
            let frame = thin_frame(&st.indices, common.degree)?;
            let d = thin_deformation(&frame, tail, common.degree)?;
            let mut list = vec![("I0".to_string(), d.i0.clone()), ("Y".to_string(), d.y.body().clone())];
            list.extend(d.f.iter().enumerate().map(|(n, f)| (format!("f{n}"), f.clone())));
            Ok(output::render(&named(list, &st)?, common.format, common.two_n))
        }
        Command::FatFn { common, nmax } => {
            let st = setup(&common)?;
            let frame = fat_frame(&st.indices, common.degree)?;
            let fat = fat_fn_virasoro(&frame, nmax.max(1), common.degree)?;
            let list = fat.f.into_iter().take(nmax + 1).enumerate().map(|(n, f)| (format!("f{n}"), f)).collect();
            Ok(output::render(&named(list, &st)?, common.format, common.two_n))
        }
        Command::FatResolvent { common, depth } => {
            let st = setup(&common)?;
            let frame = fat_frame(&st.indices, common.degree)?;
            let inputs = frame.max_g_index().saturating_sub(1).max(1);
            let fat = fat_fn_virasoro(&frame, inputs, common.degree)?;
            let omega = fat_resolvent_closed(&fat.frame, &fat.f, depth)?;
            let mut list = vec![("omega".to_string(), omega.body().clone())];
            let f = correlators_from_resolvent(&omega, depth)?;
            list.extend(f.into_iter().enumerate().map(|(n, f)| (format!("f{n}"), f)));
            Ok(output::render(&named(list, &st)?, common.format, common.two_n))
        }
        Command::OneCut { common, method, depth } => {
            let st = setup(&common)?;
            let frame = fat_frame(&st.indices, common.degree)?;
            let method = match method {
                Method::H => CutMethod::H,
                Method::System => CutMethod::System,
                Method::Even => CutMethod::Even,
            };
            let cut = solve_one_cut(method, &frame, common.degree, depth)?;
            let mut list = vec![
                ("b".to_string(), cut.b.clone()),
                ("c".to_string(), cut.c.clone()),
                ("b_plus".to_string(), cut.b_plus.clone()),
                ("b_minus".to_string(), cut.b_minus.clone()),
                ("Q".to_string(), cut.q_poly()?),
            ];
            list.extend(cut.f.iter().enumerate().map(|(n, f)| (format!("f{n}"), f.clone())));
            Ok(output::render(&named(list, &st)?, common.format, common.two_n))
        }
        Command::Invert { phi, order, via, format } => {
            let table = VarTable::standard(&["w", "v"])?;
            let tr = TruncationPolicy::unbounded();
            let mut series = PSeries::zero(&table, &tr);
            for (p, tok) in phi.split(',').map(str::trim).enumerate() {
                let c = parse_rational(tok).map_err(|_| Failure::Usage(format!("bad coefficient `{tok}` in --phi")))?;
                series = &series + &PSeries::monomial(&table, &tr, &[("w", p as i32)], c)?;
            }
            let p = InversionProblem::new(series, "w", "v", order);
            let w = match via {
                Inversion::FixedPoint => invert_fixed_point(&p)?,
                Inversion::Composition => invert_composition_formula(&j_from_phi(&p)?, "v", order)?,
            };
            Ok(output::render(&[Named { name: "w".into(), series: w }], format, false))
        }
        Command::Verify { suite } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
            }
            let results = run_suite(&suite, threads())?;
            let mut text = String::new();
            let mut passed = true;
            for r in &results {
                passed &= r.outcome.ok;
                let tag = if r.outcome.ok { "PASS" } else { "FAIL" };
                text.push_str(&format!("{tag} {}/{}: {}\n", r.suite, r.name, r.outcome.detail));
            }
            let good = results.iter().filter(|r| r.outcome.ok).count();
            text.push_str(&format!("{good}/{} checks passed\n", results.len()));
            Ok(Report { text, passed })
        }
        Command::IdentityCheck { order } => {
            let reports = all_identities(order)?;
            let mut text = String::new();
            let mut passed = true;
            for r in &reports {
                passed &= r.ok;
                let tag = if r.ok { "PASS" } else { "FAIL" };
                text.push_str(&format!("{tag} {} to order {}", r.name, r.order));
                if let Some(k) = r.first_failure {
                    text.push_str(&format!(", first failure at order {k}"));
                }
                if let Some(note) = r.note {
                    text.push_str(&format!(" ({note})"));
                }
                text.push('\n');
            }
            Ok(Report { text, passed })
        }
    }
}
