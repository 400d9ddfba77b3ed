//! Command-line front end. [`run`] returns the exit status and output text
//! instead of printing them.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::manifold::{builtin, l_genus, parse_class, pushforward, render_class, ManifoldDocument};
use crate::scalar::Scalar;
use crate::series::{l_polynomials, DEFAULT_TRUNCATION};
use crate::verify::{all_passed, checks_to_json, run_suites, Suite};
use crate::zeta::{
    antiperiodic_product_power, concrete_report, corpus, formal_report, regularized_product_power, trace_inv_power,
    BoundaryCondition,
};

pub const TRUNCATION_ENV: &str = "SUPERSDET_TRUNCATION";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Formal,
    Concrete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZetaWhat {
    Product,
    Trace,
}

#[derive(Debug, Parser)]
#[command(name = "supersdet", version, about = "Exact checks of zeta-regularized superdeterminants and L-classes")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run identity suites: grassmann, susy, series, zeta, manifold or all.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Print the L-polynomials L_1..L_K.
    Lpoly {
        #[arg(long)]
        k: Option<usize>,
    },
    /// Evaluate the L-genus of a manifold and compare with its signature.
    Lgenus {
        /// A JSON file or builtin:NAME.
        #[arg(long)]
        manifold: String,
    },
    /// Superdeterminant of the kinetic operators on a super circle.
    Sdet {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Formal)]
        mode: ModeArg,
        /// Periodic-periodic circle instead of periodic-antiperiodic.
        #[arg(long)]
        pp: bool,
        /// Corpus instance for concrete mode.
        #[arg(long)]
        instance: Option<String>,
    },
    /// Exact regularization values.
    ///
    /// product: --args N [periodic|antiperiodic]; trace: --args periodic|antiperiodic 2K
    Zeta {
        #[arg(long, value_enum)]
        what: ZetaWhat,
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Evaluate the pushforward of a class times the L-class to a point.
    Pushforward {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        class: String,
    },
}

/// Exit status and the text destined for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Convention(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((passed, value, pretty)) => {
            let stdout = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("JSON values serialize")),
                Format::Pretty => pretty,
            };
            Output { code: if passed { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() }
        }
        Err(e) => Output { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn truncation(flag: Option<usize>) -> Result<usize> {
    let k = match flag {
        Some(k) => k,
        None => match std::env::var(TRUNCATION_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{TRUNCATION_ENV}={v:?} is not a positive integer")))?,
            Err(_) => DEFAULT_TRUNCATION,
        },
    };
    if k == 0 {
        return Err(Error::Usage("truncation K must be at least 1".into()));
    }
    Ok(k)
}

type Executed = (bool, Value, String);

fn execute(cli: &Cli) -> Result<Executed> {
    match &cli.command {
        Command::Verify { suite } => verify(suite),
        Command::Lpoly { k } => lpoly(truncation(*k)?),
        Command::Lgenus { manifold } => lgenus(manifold),
        Command::Sdet { n, k, mode, pp, instance } => sdet(*n, truncation(*k)?, *mode, *pp, instance.as_deref()),
        Command::Zeta { what, args } => zeta(*what, args),
        Command::Pushforward { manifold, class } => push(manifold, class),
    }
}

fn verify(suite: &str) -> Result<Executed> {
    let checks = run_suites(&Suite::parse(suite)?);
    let passed = all_passed(&checks);
    let mut pretty: String = checks.iter().map(|c| format!("{c}\n")).collect();
    pretty.push_str(&format!("{} checks, {}\n", checks.len(), if passed { "all identities hold" } else { "FAILURES" }));
    Ok((passed, checks_to_json(&checks), pretty))
}

fn lpoly(k: usize) -> Result<Executed> {
    let ls = l_polynomials(k)?;
    let pretty = ls.iter().enumerate().map(|(i, l)| format!("L{} = {}\n", i + 1, l)).collect();
    let value = json!({
        "K": k,
        "polynomials": ls.iter().enumerate().map(|(i, l)| json!({"k": i + 1, "terms": l.to_json()})).collect::<Vec<_>>(),
    });
    Ok((true, value, pretty))
}

fn lgenus(source: &str) -> Result<Executed> {
    let doc = builtin::resolve(source)?;
    let data = doc.pontryagin_data()?;
    let genus = l_genus(&data, data.k().max(1))?;
    let signature = BigRational::from_integer(data.signature.clone());
    let matched = genus == signature;
    let verdict = if matched { "MATCH" } else { "MISMATCH" };
    let pretty =
        format!("{}: L-genus = {}, signature = {}, {}\n", data.name, genus.render(), signature.render(), verdict);
    let value = json!({
        "manifold": data.name,
        "dimension": data.dimension,
        "pontryagin_numbers": data.keyed_numbers().into_iter().map(|(k, v)| (k, Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
        "l_genus": genus.render(),
        "signature": data.signature.to_string(),
        "match": matched,
    });
    Ok((matched, value, pretty))
}

fn sdet(n: usize, k: usize, mode: ModeArg, pp: bool, instance: Option<&str>) -> Result<Executed> {
    if n == 0 {
        return Err(Error::Usage("--n must be at least 1".into()));
    }
    let report = match mode {
        ModeArg::Formal => {
            if instance.is_some() {
                return Err(Error::Usage("--instance applies to concrete mode only".into()));
            }
            formal_report(n, k, pp)?
        }
        ModeArg::Concrete => {
            let inst = match instance {
                Some(name) => corpus::by_name(name).ok_or_else(|| {
                    let known: Vec<_> = corpus::instances().into_iter().map(|i| i.name).collect();
                    Error::Usage(format!("unknown instance {name:?}; known: {}", known.join(", ")))
                })?,
                None => corpus::instances()
                    .into_iter()
                    .find(|i| i.curvature.dimension() == n)
                    .ok_or_else(|| Error::Usage(format!("no corpus instance of rank {n}")))?,
            };
            if inst.curvature.dimension() != n {
                return Err(Error::Usage(format!(
                    "instance {} has rank {}, not {n}",
                    inst.name,
                    inst.curvature.dimension()
                )));
            }
            concrete_report(&inst, k, pp)?
        }
    };
    Ok((report.passed(), report.to_json()?, report.render()?))
}

fn parse_bc(s: &str) -> Result<BoundaryCondition> {
    match s {
        "periodic" => Ok(BoundaryCondition::Periodic),
        "antiperiodic" => Ok(BoundaryCondition::Antiperiodic),
        _ => Err(Error::Usage(format!("boundary condition {s:?}: expected periodic or antiperiodic"))),
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.parse().map_err(|_| Error::Usage(format!("{what} {s:?} is not a non-negative integer")))
}

fn zeta(what: ZetaWhat, args: &[String]) -> Result<Executed> {
    match what {
        ZetaWhat::Product => {
            let (n, bc) = match args {
                [n] => (parse_u32(n, "exponent")?, BoundaryCondition::Periodic),
                [n, bc] => (parse_u32(n, "exponent")?, parse_bc(bc)?),
                _ => return Err(Error::Usage("product takes --args N [periodic|antiperiodic]".into())),
            };
            let value = match bc {
                BoundaryCondition::Periodic => regularized_product_power(n)?,
                BoundaryCondition::Antiperiodic => antiperiodic_product_power(n)?,
            };
            let pretty = format!("regularized product of the {} spectrum to the power {n} = {value}\n", bc.name());
            let json = json!({
                "what": "product",
                "n": n,
                "boundary": bc.name(),
                "value": value.to_string(),
                "r_exponent": value.r_exponent.render(),
                "two_exponent": value.two_exponent.render(),
            });
            Ok((true, json, pretty))
        }
        ZetaWhat::Trace => {
            let (bc, two_k) = match args {
                [bc, k] => (parse_bc(bc)?, parse_u32(k, "power")?),
                _ => return Err(Error::Usage("trace takes --args periodic|antiperiodic 2K".into())),
            };
            let t = trace_inv_power(bc, two_k).map_err(|e| Error::Usage(e.to_string()))?;
            let pretty =
                format!("Tr(d^-{two_k}) on the {} spectrum = {}*r^{}\n", bc.name(), t.coefficient.render(), t.r_power);
            let json = json!({
                "what": "trace",
                "boundary": bc.name(),
                "power": two_k,
                "coefficient": t.coefficient.render(),
                "r_power": t.r_power,
            });
            Ok((true, json, pretty))
        }
    }
}

fn push(source: &str, class: &str) -> Result<Executed> {
    let model = match builtin::resolve(source)? {
        ManifoldDocument::Model(m) => m,
        ManifoldDocument::Numbers(d) => {
            return Err(Error::Usage(format!("{} carries Pontryagin numbers only; pushforward needs a ring", d.name)))
        }
    };
    let s = parse_class(class, &model)?;
    let k = (model.dimension / 4).max(1) as usize;
    let value = pushforward(&s, &model, k)?;
    let l = model.l_class(k)?;
    let pretty = format!(
        "{}: class = {}, L = {}, pushforward = {}\n",
        model.name,
        render_class(&model, &s),
        render_class(&model, &l),
        value.render()
    );
    let json = json!({
        "manifold": model.name,
        "dimension": model.dimension,
        "class": render_class(&model, &s),
        "l_class": render_class(&model, &l),
        "value": value.render(),
    });
    Ok((true, json, pretty))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("supersdet").chain(args.iter().copied()))
    }

    #[test]
    fn lgenus_builtin() {
        let out = run_args(&["lgenus", "--manifold", "builtin:cp2"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "cp2: L-genus = 1, signature = 1, MATCH\n");
        let out = run_args(&["--format", "json", "lgenus", "--manifold", "builtin:k3"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["l_genus"], "-16");
        assert_eq!(v["match"], true);
    }

    #[test]
    fn sdet_and_lpoly() {
        let out = run_args(&["--format", "json", "sdet", "--n", "4", "--k", "2", "--mode", "formal"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["equal"], true);
        let out = run_args(&["sdet", "--n", "4", "--k", "2", "--mode", "concrete"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("MATCH"));
        let out = run_args(&["lpoly", "--k", "2"]);
        assert_eq!(out.stdout, "L1 = 1/3*p1\nL2 = -1/45*p1^2 + 7/45*p2\n");
    }

    #[test]
    fn zeta_and_pushforward() {
        let out = run_args(&["zeta", "--what", "product", "--args", "4"]);
        assert!(out.stdout.contains("r^(2)"), "{}", out.stdout);
        let out = run_args(&["--format", "json", "zeta", "--what", "trace", "--args", "antiperiodic", "2"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["coefficient"], "-1/4");
        let out = run_args(&["pushforward", "--manifold", "builtin:cp2", "--class", "h^2"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.ends_with("pushforward = 1\n"), "{}", out.stdout);
    }

    #[test]
    fn usage_errors_exit_two() {
        for args in [
            vec!["sdet", "--n", "4", "--bogus"],
            vec!["frobnicate"],
            vec!["lgenus", "--manifold", "builtin:nowhere"],
            vec!["lgenus", "--manifold", "/no/such/file.json"],
            vec!["zeta", "--what", "trace", "--args", "periodic", "3"],
            vec!["pushforward", "--manifold", "builtin:cp2", "--class", "h +"],
            vec!["verify", "--suite", "everything"],
            vec!["sdet", "--n", "0", "--k", "2"],
        ] {
            let out = run_args(&args);
            assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
            assert!(!out.stderr.is_empty());
        }
        assert_eq!(run_args(&["--help"]).code, 0);
    }
}
