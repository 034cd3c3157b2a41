//! Command-line front end.

mod job;
mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::error::Error;
use crate::frobenius::{pe_root, trace, FrobeniusLevel};
use crate::fsing::{
    fpt_bounds, fpt_bounds_at, is_f_pure_level, nu, reduction_evidence, test_ideal, verify_ein, DEFAULT_EMAX,
};
use crate::groebner::{set_parallel_spairs, Ideal};
use crate::linkage::{
    f_rational_criterion, fpt_inequality_check, generator_extension_check, generic_link, param_test_submodule,
    default_test_power, split_exponents, theorem33_compare, verify_geometric_link, Assumptions, CompareOptions,
};
use crate::report::Report;
use crate::ring::{parse_poly, parse_poly_list, MonomialOrder, PrimeField, RationalParam, RingContext};

pub use job::{load_job, parse_job, JobSpec};
pub use output::{parse_plain, parse_structured, Format, Output, STRUCTURED_MARKER};

/// Subcommands that compute something from a [`Params`] set.
pub const COMMANDS: &[&str] = &[
    "trace", "root", "gb", "colon", "dim", "nu", "fpt", "test-ideal", "fpure", "ein", "link", "geomcheck",
    "paramtest", "thm33", "frational", "extend", "fptcheck", "split",
];

/// Exit code for a usage or parse error.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for a resource ceiling.
pub const EXIT_CEILING: i32 = 3;

/// An error together with the exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, msg: msg.into() }
    }

    fn from_lib(err: Error, location: &str) -> Self {
        let code = if err.is_resource_limit() { EXIT_CEILING } else { EXIT_USAGE };
        CliError { code, msg: format!("{location}: {err}") }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

type CliResult<T> = Result<T, CliError>;

trait Located<T> {
    fn at(self, location: &str) -> CliResult<T>;
}

impl<T> Located<T> for crate::Result<T> {
    fn at(self, location: &str) -> CliResult<T> {
        self.map_err(|e| CliError::from_lib(e, location))
    }
}

/// Inputs shared by all subcommands. Each subcommand reads the ones it needs.
#[derive(Args, Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    /// Characteristic.
    #[arg(long = "p")]
    pub p: Option<u64>,
    /// Comma-separated variable names.
    #[arg(long)]
    pub vars: Option<String>,
    /// grevlex or lex.
    #[arg(long)]
    pub order: Option<String>,
    /// Comma-separated generators.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Second ideal (colon).
    #[arg(long)]
    pub ideal2: Option<String>,
    /// Maximal ideal for nu (default: the origin).
    #[arg(long = "m")]
    pub m: Option<String>,
    /// A reduction of the ideal (test-ideal evidence).
    #[arg(long)]
    pub reduction: Option<String>,
    #[arg(long)]
    pub poly: Option<String>,
    /// Frobenius level.
    #[arg(long = "e")]
    pub e: Option<u32>,
    /// Truncation level.
    #[arg(long)]
    pub emax: Option<u32>,
    /// Exponent as a/b.
    #[arg(long = "t")]
    pub t: Option<String>,
    /// Index of the test generator f_k, 1-based.
    #[arg(long = "k")]
    pub k: Option<usize>,
    /// Override for the test-element power N.
    #[arg(long = "n")]
    pub n: Option<u64>,
    #[arg(long)]
    pub reduction_size: Option<usize>,
    #[arg(long)]
    pub assume_unmixed: bool,
    #[arg(long)]
    pub assume_reduced: bool,
    #[arg(long = "q")]
    pub q: Option<u64>,
    /// Height.
    #[arg(long = "c")]
    pub c: Option<usize>,
    /// Comma-separated exponent vector.
    #[arg(long)]
    pub beta: Option<String>,
    /// Comma-separated coefficients of the new generator.
    #[arg(long = "a")]
    pub a: Option<String>,
}

#[derive(Parser, Debug)]
#[command(name = "fptool", version, about = "Frobenius invariants and generic links in characteristic p")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,
    /// Process S-pairs in parallel batches.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace map Tr^e of a polynomial.
    Trace(Params),
    /// p^e-th root of an ideal.
    Root(Params),
    /// Reduced Groebner basis.
    Gb(Params),
    /// Ideal quotient (ideal : ideal2).
    Colon(Params),
    /// Krull dimension and height.
    Dim(Params),
    /// nu_I(p^e) at a maximal ideal.
    Nu(Params),
    /// F-pure threshold bounds.
    Fpt(Params),
    /// Truncated test ideal tau(I^t).
    TestIdeal(Params),
    /// F-purity of (R, I^t) at level e.
    Fpure(Params),
    /// Inclusions behind tau(I^c) = I.
    Ein(Params),
    /// First generic link.
    Link(Params),
    /// Geometric linkage checks.
    Geomcheck(Params),
    /// Parameter test submodule of S/J.
    Paramtest(Params),
    /// Parameter test submodule against tau(I^c)(S/J).
    Thm33(Params),
    /// F-rationality criterion for S/J.
    Frational(Params),
    /// Adding a generator to I.
    Extend(Params),
    /// fpt inequalities along the link.
    Fptcheck(Params),
    /// Split an exponent vector.
    Split(Params),
    /// Run job files.
    Job(JobArgs),
}

#[derive(Args, Debug)]
struct JobArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Run all files concurrently, writing one .out file per job.
    #[arg(long)]
    jobs: bool,
    /// Directory for .out files (default: next to each job file).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl Command {
    fn split(self) -> Result<(&'static str, Params), JobArgs> {
        use Command::*;
        Ok(match self {
            Trace(p) => ("trace", p),
            Root(p) => ("root", p),
            Gb(p) => ("gb", p),
            Colon(p) => ("colon", p),
            Dim(p) => ("dim", p),
            Nu(p) => ("nu", p),
            Fpt(p) => ("fpt", p),
            TestIdeal(p) => ("test-ideal", p),
            Fpure(p) => ("fpure", p),
            Ein(p) => ("ein", p),
            Link(p) => ("link", p),
            Geomcheck(p) => ("geomcheck", p),
            Paramtest(p) => ("paramtest", p),
            Thm33(p) => ("thm33", p),
            Frational(p) => ("frational", p),
            Extend(p) => ("extend", p),
            Fptcheck(p) => ("fptcheck", p),
            Split(p) => ("split", p),
            Job(j) => return Err(j),
        })
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn error(err: CliError) -> Self {
        RunOutcome { code: err.code, stdout: String::new(), stderr: format!("error: {}\n", err.msg) }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutcome { code, stdout: text, stderr: String::new() }
            } else {
                RunOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    set_parallel_spairs(cli.parallel);
    match cli.command.split() {
        Ok((command, params)) => {
            let checked = require_assumptions(command, &params, FlagStyle::Cli);
            match checked.and_then(|_| execute(command, &params)) {
                Ok(out) => RunOutcome { code: out.exit, stdout: out.render(cli.format), stderr: String::new() },
                Err(err) => RunOutcome::error(err),
            }
        }
        Err(jobs) => run_jobs(&jobs, cli.format),
    }
}

fn run_jobs(args: &JobArgs, format: Format) -> RunOutcome {
    if !args.jobs {
        if args.files.len() != 1 {
            return RunOutcome::error(CliError::usage("several job files need --jobs"));
        }
        return match load_job(&args.files[0]).and_then(|spec| spec.run()) {
            Ok(out) => RunOutcome { code: out.exit, stdout: out.render(format), stderr: String::new() },
            Err(err) => RunOutcome::error(err),
        };
    }
    let results: Vec<(PathBuf, i32, String)> = args
        .files
        .par_iter()
        .map(|path| {
            let target = out_path(path, args.out_dir.as_deref());
            let (code, text) = match load_job(path).and_then(|spec| spec.run()) {
                Ok(out) => (out.exit, out.render(format)),
                Err(err) => (err.code, format!("error: {}\n", err.msg)),
            };
            match std::fs::write(&target, text) {
                Ok(()) => (target, code, String::new()),
                Err(e) => (target.clone(), EXIT_USAGE, format!("cannot write {}: {e}", target.display())),
            }
        })
        .collect();
    let mut stdout = String::new();
    let mut stderr = String::new();
    let mut code = 0;
    for (path, c, err) in results {
        stdout.push_str(&format!("job={} exit={c}\n", path.display()));
        if !err.is_empty() {
            stderr.push_str(&format!("error: {err}\n"));
        }
        code = code.max(c);
    }
    RunOutcome { code, stdout, stderr }
}

fn out_path(job: &std::path::Path, dir: Option<&std::path::Path>) -> PathBuf {
    let name = job.file_stem().map(|s| s.to_os_string()).unwrap_or_else(|| "job".into());
    let mut file = PathBuf::from(name);
    file.set_extension("out");
    match dir {
        Some(d) => d.join(file),
        None => job.with_file_name(file),
    }
}

#[derive(Clone, Copy)]
pub(crate) enum FlagStyle {
    Cli,
    Job,
}

/// Commands whose conclusions rest on caller-asserted hypotheses refuse to
/// run without them.
pub(crate) fn require_assumptions(command: &str, params: &Params, style: FlagStyle) -> CliResult<()> {
    let (unmixed, reduced) = match command {
        "thm33" | "frational" => (true, true),
        "ein" => (true, false),
        "geomcheck" => (false, true),
        _ => (false, false),
    };
    let name = |flag: &str| match style {
        FlagStyle::Cli => format!("--assume-{flag}"),
        FlagStyle::Job => format!("assume_{flag} = true"),
    };
    if unmixed && !params.assume_unmixed {
        return Err(CliError::usage(format!("{command} requires {}", name("unmixed"))));
    }
    if reduced && !params.assume_reduced {
        return Err(CliError::usage(format!("{command} requires {}", name("reduced"))));
    }
    Ok(())
}

impl Params {
    fn need<'a, T>(&'a self, v: &'a Option<T>, flag: &str) -> CliResult<&'a T> {
        v.as_ref().ok_or_else(|| CliError::usage(format!("missing --{flag}")))
    }

    pub(crate) fn ring(&self) -> CliResult<RingContext> {
        let p = *self.need(&self.p, "p")?;
        let vars: Vec<&str> = self.need(&self.vars, "vars")?.split(',').map(str::trim).collect();
        let order = match &self.order {
            Some(o) => MonomialOrder::parse(o.trim()).at("--order")?,
            None => MonomialOrder::Grevlex,
        };
        PrimeField::new(p).at("--p")?;
        RingContext::new(p, &vars, order).at("--vars")
    }

    fn ideal_from(&self, text: &Option<String>, flag: &str, ring: &RingContext) -> CliResult<Ideal> {
        let text = self.need(text, flag)?;
        Ideal::parse(text, ring).at(&format!("--{flag}"))
    }

    pub(crate) fn ideal(&self, ring: &RingContext) -> CliResult<Ideal> {
        self.ideal_from(&self.ideal, "ideal", ring)
    }

    fn level(&self, ring: &RingContext) -> CliResult<FrobeniusLevel> {
        FrobeniusLevel::for_ring(ring, self.e.unwrap_or(1)).at("--e")
    }

    fn emax(&self) -> u32 {
        self.emax.unwrap_or(DEFAULT_EMAX)
    }

    fn t(&self) -> CliResult<RationalParam> {
        self.need(&self.t, "t")?.trim().parse().at("--t")
    }

    fn assumptions(&self) -> Assumptions {
        Assumptions { unmixed: self.assume_unmixed, reduced: self.assume_reduced, reduction_size: self.reduction_size }
    }
}

fn numbers(text: &str, flag: &str) -> CliResult<Vec<u64>> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| {
            s.trim().parse::<u64>().map_err(|_| CliError::usage(format!("--{flag}: entry {} is not a number: `{}`", i + 1, s.trim())))
        })
        .collect()
}

fn values(title: &str, pairs: &[(&str, String)]) -> Report {
    let mut rep = Report::new(title);
    for (k, v) in pairs {
        rep.value(*k, v);
    }
    rep
}

/// Runs one subcommand.
pub fn execute(command: &str, params: &Params) -> CliResult<Output> {
    let rep = match command {
        "split" => {
            let q = *params.need(&params.q, "q")?;
            let c = *params.need(&params.c, "c")?;
            let beta = numbers(params.need(&params.beta, "beta")?, "beta")?;
            let rows = split_exponents(&beta, c, q).at("--beta")?;
            let shown: Vec<String> = rows
                .iter()
                .map(|row| format!("({})", row.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            values(command, &[("split", shown.join(","))])
        }
        _ => execute_in_ring(command, params)?,
    };
    Ok(Output::new(command, rep))
}

fn execute_in_ring(command: &str, params: &Params) -> CliResult<Report> {
    let ring = params.ring()?;
    if command == "trace" {
        let f = parse_poly(params.need(&params.poly, "poly")?, &ring).at("--poly")?;
        let level = params.level(&ring)?;
        return Ok(values(command, &[("trace", trace(&f, level).at("--poly")?.to_string())]));
    }
    let i = params.ideal(&ring)?;
    let loc = "--ideal";
    let rep = match command {
        "root" => {
            let level = params.level(&ring)?;
            values(command, &[("root", pe_root(&i, level).at(loc)?.reduced_string())])
        }
        "gb" => {
            values(command, &[("gb", i.reduced_string()), ("size", i.basis().len().to_string())])
        }
        "colon" => {
            let j = params.ideal_from(&params.ideal2, "ideal2", &ring)?;
            values(command, &[("colon", i.colon(&j).at("--ideal2")?.reduced_string())])
        }
        "dim" => {
            let (d, h) = i.dimension_height().at(loc)?;
            values(command, &[("dim", d.to_string()), ("height", h.to_string())])
        }
        "nu" => {
            let level = params.level(&ring)?;
            let m = match &params.m {
                Some(_) => params.ideal_from(&params.m, "m", &ring)?,
                None => Ideal::maximal_at_origin(&ring),
            };
            values(command, &[("nu", nu(&i, &m, level).at(loc)?.to_string())])
        }
        "fpt" => {
            let b = match &params.m {
                Some(_) => fpt_bounds_at(&i, &params.ideal_from(&params.m, "m", &ring)?, params.emax()),
                None => fpt_bounds(&i, params.emax()),
            }
            .at(loc)?;
            let mut rep = Report::new(command);
            for (e, v) in &b.nu_values {
                rep.value(format!("nu_e{e}"), v);
            }
            rep.value("lower", b.lower);
            if let Some(u) = b.upper {
                rep.value("upper", u);
            }
            rep.value("fpt", b.interval());
            rep
        }
        "test-ideal" => {
            let t = params.t()?;
            let tau = test_ideal(&i, &t, params.emax()).at(loc)?;
            let mut rep = Report::new(command);
            rep.value("t", t);
            rep.value("emax", tau.e_max);
            for (e, part) in &tau.per_level {
                rep.value(format!("level_e{e}"), part.reduced_string());
            }
            rep.value("tau", tau.ideal.reduced_string());
            rep.value("stabilized", tau.stabilized);
            let regular = if tau.ideal.is_unit() { "yes" } else { "inconclusive" };
            rep.value("strongly_f_regular", regular);
            if params.reduction.is_some() {
                let red = params.ideal_from(&params.reduction, "reduction", &ring)?;
                let ev = reduction_evidence(&i, &red, &t, params.emax()).at("--reduction")?;
                for c in ev.checks {
                    rep.push(c);
                }
            }
            rep
        }
        "fpure" => {
            let t = params.t()?;
            let level = params.level(&ring)?;
            values(command, &[("fpure", is_f_pure_level(&i, &t, level).at(loc)?.to_string())])
        }
        "ein" => {
            let c = match params.c {
                Some(c) => c as u64,
                None => i.dimension_height().at(loc)?.1 as u64,
            };
            let t = match &params.t {
                Some(_) => params.t()?,
                None => RationalParam::integer(c),
            };
            verify_ein(&i, c, &t, params.emax()).at(loc)?
        }
        _ => return execute_link(command, params, &i),
    };
    Ok(rep)
}

fn execute_link(command: &str, params: &Params, i: &Ideal) -> CliResult<Report> {
    let loc = "--ideal";
    let emax = params.emax();
    if command == "frational" {
        return f_rational_criterion(i, emax, &params.assumptions()).at(loc);
    }
    if command == "fptcheck" {
        let r = params.reduction_size.unwrap_or(i.generators().len());
        return fpt_inequality_check(i, r, emax).at(loc);
    }
    let link = generic_link(i).at(loc)?;
    let mut rep = match command {
        "link" => {
            let mut rep = Report::new(command);
            rep.value("c", link.c);
            rep.value("r", link.r());
            for (n, g) in link.g.iter().enumerate() {
                rep.value(format!("g{}", n + 1), g);
            }
            rep.value("J", link.j.reduced_string());
            rep.value("height_J", link.j.dimension_height().at(loc)?.1);
            rep
        }
        "geomcheck" => verify_geometric_link(&link, &params.assumptions()).at(loc)?,
        "paramtest" => {
            let k = params.k.unwrap_or(1);
            let n_pow = match params.n {
                Some(n) => n,
                None => default_test_power(&link, emax).at(loc)?,
            };
            let sub = param_test_submodule(&link, k, n_pow, emax).at("--k")?;
            let mut rep = Report::new(command);
            rep.value("k", k);
            rep.value("N", n_pow);
            rep.value("emax", emax);
            rep.value("J", link.j.reduced_string());
            rep.value("tau_omega", sub.reduced_string());
            rep
        }
        "thm33" => {
            let opts = CompareOptions {
                k: params.k.unwrap_or(1),
                n_pow: params.n,
                assumptions: params.assumptions(),
                ..CompareOptions::default()
            };
            theorem33_compare(&link, emax, &opts).at(loc)?
        }
        "extend" => {
            let text = params.need(&params.a, "a")?;
            let a = parse_poly_list(text, &link.base).at("--a")?;
            generator_extension_check(&link, &a).at("--a")?
        }
        other => return Err(CliError::usage(format!("unknown subcommand `{other}`"))),
    };
    if command != "geomcheck" && command != "thm33" && rep.assumptions.is_empty() {
        params.assumptions().banner(&mut rep);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> RunOutcome {
        run(std::iter::once("fptool").chain(shell_words(args).iter().map(String::as_str)))
    }

    fn shell_words(s: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = String::new();
        let mut quoted = false;
        for ch in s.chars() {
            match ch {
                '"' => quoted = !quoted,
                ' ' if !quoted => {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                }
                _ => cur.push(ch),
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        out
    }

    #[test]
    fn nu_of_maximal_ideal() {
        let r = go(r#"nu --p 2 --vars x,y --ideal "x,y" --e 1"#);
        assert_eq!((r.code, r.stdout.as_str()), (0, "nu=2\n"));
    }

    #[test]
    fn split_single_row() {
        let r = go("split --q 8 --c 1 --beta 3,4");
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, "split=(3,4)\n");
    }

    #[test]
    fn thm33_passes() {
        let r = go(r#"thm33 --p 2 --vars x,y --ideal "x,y" --emax 1 --assume-reduced --assume-unmixed --reduction-size 2"#);
        assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
        assert!(r.stdout.contains("check.equality=pass"));
        assert!(r.stdout.contains("assumption=I unmixed: asserted by caller, not verified"));
    }

    #[test]
    fn thm33_needs_flags() {
        let r = go(r#"thm33 --p 2 --vars x,y --ideal "x,y" --assume-unmixed"#);
        assert_eq!(r.code, 2);
        assert!(r.stderr.contains("--assume-reduced"), "{}", r.stderr);
    }

    #[test]
    fn usage_errors_name_location() {
        let r = go(r#"nu --p 4 --vars x --ideal x"#);
        assert_eq!(r.code, 2);
        assert!(r.stderr.contains("--p") && r.stderr.contains("characteristic must be prime"), "{}", r.stderr);
        let r = go(r#"gb --p 2 --vars x --ideal "x+z""#);
        assert_eq!(r.code, 2);
        assert!(r.stderr.contains("--ideal") && r.stderr.contains("position"), "{}", r.stderr);
        assert_eq!(go("bogus").code, 2);
    }

    #[test]
    fn every_command_round_trips() {
        let cases = [
            r#"trace --p 2 --vars x,y --poly "x^3*y^3+x" --e 1"#,
            r#"root --p 2 --vars x,y --ideal "x^3*y^2" --e 1"#,
            r#"gb --p 3 --vars x,y --ideal "x^2-y,x*y""#,
            r#"colon --p 3 --vars x,y --ideal "x*y" --ideal2 "x""#,
            r#"dim --p 2 --vars x,y,z --ideal "x,y""#,
            r#"fpt --p 2 --vars x,y --ideal "x,y" --emax 2"#,
            r#"test-ideal --p 2 --vars x,y --ideal "x,y" --t 2 --emax 1 --reduction "x,y""#,
            r#"fpure --p 2 --vars x,y --ideal "x*y" --t 1 --e 1"#,
            r#"ein --p 2 --vars x,y --ideal "x,y" --emax 1 --assume-unmixed"#,
            r#"link --p 2 --vars x,y --ideal "x,y""#,
            r#"geomcheck --p 2 --vars x,y --ideal "x" --assume-reduced"#,
            r#"paramtest --p 2 --vars x,y --ideal "x,y" --emax 1"#,
            r#"frational --p 2 --vars x,y --ideal "x,y" --emax 1 --assume-unmixed --assume-reduced"#,
            r#"extend --p 2 --vars x,y --ideal "x" --a 1"#,
            r#"fptcheck --p 2 --vars x,y --ideal "x" --emax 1"#,
        ];
        for case in cases {
            let plain = go(case);
            assert!(plain.code == 0 || plain.code == 1, "{case}: {}", plain.stderr);
            let structured = go(&format!("{case} --format structured"));
            assert!(structured.stdout.starts_with(&plain.stdout), "{case}");
            let out = parse_structured(&structured.stdout).unwrap();
            assert_eq!(out.lines(), parse_plain(&plain.stdout), "{case}");
            assert_eq!(out.exit, plain.code);
        }
    }
}
