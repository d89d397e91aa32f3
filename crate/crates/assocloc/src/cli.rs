//! Command-line surface. Each subcommand loads its input files, runs the
//! corresponding constructions, and prints a flat `key: value` report on
//! standard output. Exit code 0 means every executed check passed (or
//! failed exactly as an expectation file anticipated), 1 means a
//! mathematical check failed, and 2 means the input or usage was invalid.
//! All randomized searches are driven by one seeded generator, so a
//! report is a pure function of (input files, seed, cap).

use std::sync::Arc;

use crate::algebra::{AlgebraError, AlgebraPresentation};
use crate::completion::{complete, hausdorff_commutative, hausdorff_localize};
use crate::format::{parse_algebra, parse_expect, parse_module, ExpectRule, ParsedAlgebra};
use crate::localize::{
    commutant, localize, product_compare, schur_verify, EndRingContext, LocalizeError, SchurStatus,
};
use crate::module::{radical, simples, ModuleRep, Simplicity};
use crate::oracle::{maximal_ideals, oracle_compare, OracleOutcome};
use crate::report::{CheckStatus, Report};
use crate::session::{Session, DEFAULT_CAP};

const USAGE: &str = "\
usage: assocloc <command> [args] [flags]

commands:
  validate <a.alg> [m.mod]        check the algebra (and module) axioms
  simples <a.alg>                 composition factors of the regular module
  endo <a.alg> <m.mod>            structure morphism into End(M)
  localize <a.alg> <m.mod>...     the localizing ring A_M for M = ⊕ summands
  product <a.alg> <m.mod> <m.mod>...  compare A_⊕Mi with ∏ A_Mi
  complete <a.alg>                adic completion (at the radical, or --maximal <k>)
  hausdorff <a.alg> [m.mod]...    Hausdorff localization (no modules: commutative form)
  oracle-compare <a.alg>          commutative check of A_M against classical A_m
  verify <a.alg>                  full invariant suite

flags:
  --seed <u64>     randomized-search seed (default: $ASSOCLOC_SEED or 0)
  --cap <count>    enumeration cap (default 65536)
  --report <path>  also write the report to a file
  --expect <path>  expectation rules marking anticipated check failures
  --maximal <k>    for `complete`: complete at the k-th maximal ideal
";

/// Errors on the exit-2 path: bad usage or unusable input.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
}

struct Options {
    command: String,
    positional: Vec<String>,
    seed: u64,
    cap: u64,
    report_path: Option<String>,
    expect_path: Option<String>,
    maximal: Option<usize>,
}

fn parse_args(args: &[String]) -> Result<Options, CliError> {
    let mut it = args.iter();
    let command = it
        .next()
        .ok_or_else(|| CliError::Usage("missing command".into()))?
        .clone();
    let known = [
        "validate", "simples", "endo", "localize", "product", "complete", "hausdorff",
        "oracle-compare", "verify",
    ];
    if !known.contains(&command.as_str()) {
        return Err(CliError::Usage(format!("unknown command `{command}`")));
    }
    let mut opts = Options {
        command,
        positional: Vec::new(),
        seed: default_seed(),
        cap: DEFAULT_CAP,
        report_path: None,
        expect_path: None,
        maximal: None,
    };
    while let Some(arg) = it.next() {
        let mut value_of = |flag: &str| -> Result<String, CliError> {
            it.next()
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("flag {flag} needs a value")))
        };
        match arg.as_str() {
            "--seed" => {
                let v = value_of("--seed")?;
                opts.seed = v
                    .parse()
                    .map_err(|_| CliError::Usage(format!("--seed: `{v}` is not a number")))?;
            }
            "--cap" => {
                let v = value_of("--cap")?;
                opts.cap = v
                    .parse()
                    .map_err(|_| CliError::Usage(format!("--cap: `{v}` is not a count")))?;
            }
            "--report" => opts.report_path = Some(value_of("--report")?),
            "--expect" => opts.expect_path = Some(value_of("--expect")?),
            "--maximal" => {
                let v = value_of("--maximal")?;
                opts.maximal = Some(
                    v.parse()
                        .map_err(|_| CliError::Usage(format!("--maximal: `{v}` is not an index")))?,
                );
            }
            other if other.starts_with("--") => {
                return Err(CliError::Usage(format!("unknown flag `{other}`")));
            }
            other => opts.positional.push(other.to_string()),
        }
    }
    Ok(opts)
}

fn default_seed() -> u64 {
    std::env::var("ASSOCLOC_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

/// Write to stdout without panicking if the reader has gone away
/// (e.g. the report is piped into `head`); the exit code carries the
/// verdict, so an interrupted write must not turn into a crash.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

/// Like [`emit`], for diagnostics on stderr (a newline is appended).
fn emit_err(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{text}");
}

/// Run the CLI; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let opts = match parse_args(args) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            emit_err(&format!("error: {msg}\n{USAGE}"));
            return 2;
        }
        Err(CliError::Input(msg)) => {
            emit_err(&format!("error: {msg}"));
            return 2;
        }
    };
    let expect_rules = match load_expectations(&opts) {
        Ok(r) => r,
        Err(CliError::Input(msg)) | Err(CliError::Usage(msg)) => {
            emit_err(&format!("error: {msg}"));
            return 2;
        }
    };
    match dispatch(&opts) {
        Ok(mut report) => {
            report.apply_expectations(&expect_rules);
            let text = report.render();
            emit(&text);
            if let Some(path) = &opts.report_path {
                if let Err(e) = std::fs::write(path, &text) {
                    emit_err(&format!("error: cannot write report to {path}: {e}"));
                    return 2;
                }
            }
            report.exit_code()
        }
        Err(CliError::Usage(msg)) => {
            emit_err(&format!("error: {msg}\n{USAGE}"));
            2
        }
        Err(CliError::Input(msg)) => {
            emit_err(&format!("error: {msg}"));
            2
        }
    }
}

fn load_expectations(opts: &Options) -> Result<Vec<ExpectRule>, CliError> {
    match &opts.expect_path {
        None => Ok(Vec::new()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            parse_expect(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
        }
    }
}

fn dispatch(opts: &Options) -> Result<Report, CliError> {
    match opts.command.as_str() {
        "validate" => cmd_validate(opts),
        "simples" => cmd_simples(opts),
        "endo" => cmd_endo(opts),
        "localize" => cmd_localize(opts),
        "product" => cmd_product(opts),
        "complete" => cmd_complete(opts),
        "hausdorff" => cmd_hausdorff(opts),
        "oracle-compare" => cmd_oracle_compare(opts),
        "verify" => cmd_verify(opts),
        _ => unreachable!("parse_args rejects unknown commands"),
    }
}

fn want_args(opts: &Options, min: usize, max: usize) -> Result<(), CliError> {
    let n = opts.positional.len();
    if n < min || n > max {
        return Err(CliError::Usage(format!(
            "`{}` takes {} argument(s), got {n}",
            opts.command,
            if min == max { min.to_string() } else { format!("{min}..{max}") }
        )));
    }
    Ok(())
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// Parse and semantically validate an algebra file; violations are input
/// errors (exit 2), with line numbers recovered from the product table.
fn load_algebra(path: &str) -> Result<(Arc<AlgebraPresentation>, ParsedAlgebra), CliError> {
    let text = read_file(path)?;
    let parsed = parse_algebra(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    if let Err(violations) = parsed.presentation.validate() {
        return Err(CliError::Input(describe_violations(path, &parsed, &violations)));
    }
    Ok((Arc::new(parsed.presentation.clone()), parsed))
}

fn describe_violations(path: &str, parsed: &ParsedAlgebra, violations: &[AlgebraError]) -> String {
    let mut out = format!("{path}: the presentation is not a unital associative algebra");
    for v in violations.iter().take(8) {
        match v {
            AlgebraError::NonAssociative(i, j, k, _) => {
                let line = parsed.mul_lines.get(&(*i, *j)).copied().unwrap_or(0);
                out.push_str(&format!(
                    "\n  NonAssociative: (e{i}·e{j})·e{k} ≠ e{i}·(e{j}·e{k}) (see `mul {i} {j}` at line {line})"
                ));
            }
            other => out.push_str(&format!("\n  {other}")),
        }
    }
    if violations.len() > 8 {
        out.push_str(&format!("\n  … and {} more", violations.len() - 8));
    }
    out
}

/// Parse a module file and check the module axioms; violations are input
/// errors, like a malformed algebra.
fn load_module(path: &str, algebra: &Arc<AlgebraPresentation>) -> Result<ModuleRep, CliError> {
    let text = read_file(path)?;
    let parsed =
        parse_module(&text, algebra).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    parsed.build(algebra).map_err(|violations| {
        let mut out = format!("{path}: not a module over {}", algebra.name());
        for v in violations.iter().take(8) {
            out.push_str(&format!("\n  {v}"));
        }
        CliError::Input(out)
    })
}

fn base_inputs(report: &mut Report, opts: &Options) {
    for (k, path) in opts.positional.iter().enumerate() {
        let key = if k == 0 { "algebra".to_string() } else { format!("module{k}") };
        report.input(key, path);
    }
    report.input("seed", opts.seed);
    report.input("cap", opts.cap);
    if let Some(p) = &opts.expect_path {
        report.input("expect", p);
    }
}

fn session_for(opts: &Options) -> Session {
    Session::with_seed_and_cap(opts.seed, opts.cap)
}

fn cmd_validate(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 1, 2)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    let mut report = Report::new("validate");
    base_inputs(&mut report, opts);
    report.result("algebra", algebra.name());
    report.result("p", algebra.field().modulus());
    report.result("dim", algebra.dim());
    report.result("commutative", algebra.is_commutative());
    report.pass("associativity");
    report.pass("unit_axiom");
    if let Some(mpath) = opts.positional.get(1) {
        let module = load_module(mpath, &algebra)?;
        report.result("module", module.name());
        report.result("module_dim", module.dim());
        report.pass("module_relations");
        report.pass("module_unit");
    }
    Ok(report)
}

/// Composition classes of the regular module, sorted canonically
/// (dimension, then annihilator basis) so names are seed-independent.
fn sorted_simple_classes(
    algebra: &Arc<AlgebraPresentation>,
    session: &mut Session,
) -> (Vec<ModuleRep>, Vec<usize>) {
    let series = ModuleRep::regular(algebra).chop(session);
    let mults = series.multiplicities();
    let mut order: Vec<usize> = (0..series.class_reps.len()).collect();
    let keys: Vec<(usize, Vec<Vec<u64>>)> = series
        .class_reps
        .iter()
        .map(|m| (m.dim(), m.annihilator().space().basis().to_vec()))
        .collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let reps = order
        .iter()
        .enumerate()
        .map(|(k, &i)| series.class_reps[i].clone().with_name(format!("S{k}")))
        .collect();
    let mults = order.iter().map(|&i| mults[i]).collect();
    (reps, mults)
}

fn cmd_simples(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 1, 1)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    let mut session = session_for(opts);
    let mut report = Report::new("simples");
    base_inputs(&mut report, opts);
    let (reps, mults) = sorted_simple_classes(&algebra, &mut session);
    report.result("num_classes", reps.len());
    let mut total = 0usize;
    for (k, (rep, mult)) in reps.iter().zip(&mults).enumerate() {
        report.result(format!("S{k}.dim"), rep.dim());
        report.result(format!("S{k}.mult"), mult);
        total += rep.dim() * mult;
    }
    report.result("radical_dim", radical(&algebra, &mut session).dim());
    if total == algebra.dim() {
        report.pass("chop_partition");
    } else {
        report.fail(
            "chop_partition",
            format!("Σ dim·mult = {total} but dim A = {}", algebra.dim()),
        );
    }
    for (k, rep) in reps.iter().enumerate() {
        let name = format!("meataxe_agrees_exhaustive.S{k}");
        let count = (algebra.field().modulus() as u128)
            .checked_pow(rep.dim() as u32)
            .unwrap_or(u128::MAX);
        if count <= 1 << 12 {
            match rep.is_simple_exhaustive() {
                Ok(Simplicity::Simple) => report.pass(name),
                Ok(Simplicity::NotSimple { .. }) => {
                    report.fail(name, "exhaustive search found a submodule in a chop factor")
                }
                Err(e) => report.fail(name, e.to_string()),
            }
        } else {
            report.skip(name, "q^m above the exhaustive threshold 2^12");
        }
    }
    Ok(report)
}

fn cmd_endo(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 2, 2)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    let module = load_module(&opts.positional[1], &algebra)?;
    let mut session = session_for(opts);
    let mut report = Report::new("endo");
    base_inputs(&mut report, opts);
    let sm = module.structure_morphism();
    report.result("dim_EM", module.dim() * module.dim());
    report.result("rank_eta", sm.map.rank());
    report.result("dim_ker_eta", sm.kernel.dim());
    let simple = matches!(
        module.is_simple(&mut session).map_err(|e| CliError::Input(e.to_string()))?,
        Simplicity::Simple
    );
    report.result("is_simple", simple);
    if simple {
        let ctx = EndRingContext::new(vec![module.clone()]);
        match commutant(&ctx, &mut session) {
            Ok(mut division) => {
                report.result("dim_DM", division.basis.dim());
                match schur_verify(&mut division, session.cap()) {
                    Ok(SchurStatus::ExhaustivelyVerified) => report.pass("schur_division"),
                    Ok(SchurStatus::CapExceeded) => {
                        report.skip("schur_division", "enumeration cap exceeded")
                    }
                    Err(e) => report.fail("schur_division", e.to_string()),
                }
            }
            Err(e) => report.fail("schur_division", e.to_string()),
        }
    }
    Ok(report)
}

fn load_summands(
    opts: &Options,
    algebra: &Arc<AlgebraPresentation>,
) -> Result<Vec<ModuleRep>, CliError> {
    opts.positional[1..]
        .iter()
        .map(|p| load_module(p, algebra))
        .collect()
}

fn cmd_localize(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 2, usize::MAX)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    let summands = load_summands(opts, &algebra)?;
    let mut session = session_for(opts);
    let mut report = Report::new("localize");
    base_inputs(&mut report, opts);
    match localize(&algebra, &summands, &mut session) {
        Ok(l) => {
            report.result("dim_AM", l.dim());
            report.result("dim_EM", l.context().total_dim() * l.context().total_dim());
            report.result("dim_DM", l.division().basis.dim());
            report.result("dim_ker_eta", l.kernel().dim());
            report.result("num_denominators", l.denominators().len());
            report.result("denominators_truncated", l.truncated());
            report.pass("summands_simple");
            push_schur_check(&mut report, "schur_division", l.division().verified);
            report.pass("closure_sound");
            report.pass("unit_condition");
            let rank = l.eta().map.rank();
            if l.dim() == rank {
                report.pass("collapse_im_eta");
            } else {
                report.fail(
                    "collapse_im_eta",
                    format!("dim A_M = {} exceeds rank η = {rank}", l.dim()),
                );
            }
        }
        Err(e) => push_localize_failure(&mut report, &e),
    }
    Ok(report)
}

fn push_schur_check(report: &mut Report, name: &str, status: Option<SchurStatus>) {
    match status {
        Some(SchurStatus::ExhaustivelyVerified) => report.pass(name),
        Some(SchurStatus::CapExceeded) => report.skip(name, "enumeration cap exceeded"),
        None => report.skip(name, "not verified"),
    }
}

/// Map a construction error onto the check that caught it.
fn push_localize_failure(report: &mut Report, e: &LocalizeError) {
    match e {
        LocalizeError::NonSimpleSummand(i) => {
            report.fail("summands_simple", format!("summand {i} is not simple"))
        }
        LocalizeError::ZeroDivisorFound { .. } => report.fail("schur_division", e.to_string()),
        other => report.fail("localization", other.to_string()),
    }
}

fn cmd_product(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 3, usize::MAX)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    let summands = load_summands(opts, &algebra)?;
    let mut session = session_for(opts);
    let mut report = Report::new("product");
    base_inputs(&mut report, opts);
    match product_compare(&algebra, &summands, &mut session) {
        Ok(pc) => {
            report.result("dim_L", pc.combined.dim());
            let total: usize = pc.factors.iter().map(|f| f.dim()).sum();
            report.result("dim_product", total);
            for (k, f) in pc.factors.iter().enumerate() {
                report.result(format!("dim_L{k}"), f.dim());
            }
            report.result(
                "iso_pattern",
                pc.iso_classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
            );
            report.result("pairwise_non_isomorphic", pc.pairwise_non_isomorphic);
            report.result("is_isomorphism", pc.is_isomorphism);
            report.pass("summands_simple");
            if pc.projections_surjective.iter().all(|&s| s) {
                report.pass("projections_surjective");
            } else {
                let bad: Vec<String> = pc
                    .projections_surjective
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| !s)
                    .map(|(i, _)| i.to_string())
                    .collect();
                report.fail("projections_surjective", format!("projection(s) {} not onto", bad.join(",")));
            }
            if pc.is_isomorphism == pc.pairwise_non_isomorphic {
                report.pass("lemma_product_decomposition");
            } else {
                report.fail(
                    "lemma_product_decomposition",
                    format!(
                        "iso = {} but pairwise-non-isomorphic = {} (dims {} vs {total})",
                        pc.is_isomorphism,
                        pc.pairwise_non_isomorphic,
                        pc.combined.dim()
                    ),
                );
            }
            let identical: Vec<(usize, usize)> = (0..summands.len())
                .flat_map(|i| ((i + 1)..summands.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| summands[i].same_presentation(&summands[j]))
                .collect();
            if identical.is_empty() {
                report.skip("diagonal_certified", "no identical summand presentations");
            } else if identical.iter().all(|p| pc.diagonal_pairs.contains(p)) {
                report.check(
                    "diagonal_certified",
                    CheckStatus::Pass,
                    Some(format!(
                        "diagonal blocks agree on pair(s) {}",
                        identical
                            .iter()
                            .map(|(i, j)| format!("({i},{j})"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    )),
                );
            } else {
                report.fail("diagonal_certified", "identical summands without diagonal image");
            }
        }
        Err(e) => push_localize_failure(&mut report, &e),
    }
    Ok(report)
}

fn cmd_complete(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 1, usize::MAX)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    if opts.maximal.is_some() && opts.positional.len() > 1 {
        return Err(CliError::Usage("--maximal conflicts with module arguments".into()));
    }
    let mut session = session_for(opts);
    let mut report = Report::new("complete");
    base_inputs(&mut report, opts);
    let (ideal, label) = if opts.positional.len() > 1 {
        let summands = load_summands(opts, &algebra)?;
        let sum = ModuleRep::direct_sum(&summands);
        (sum.annihilator(), "annihilator".to_string())
    } else {
        match opts.maximal {
            None => (radical(&algebra, &mut session), "radical".to_string()),
            Some(k) => {
                let mds = maximal_ideals(&algebra, &mut session)
                    .map_err(|e| CliError::Input(format!("--maximal: {e}")))?;
                let md = mds.get(k).ok_or_else(|| {
                    CliError::Input(format!("--maximal {k}: only {} maximal ideal(s)", mds.len()))
                })?;
                (md.ideal.clone(), format!("m{k}"))
            }
        }
    };
    report.result("ideal", &label);
    report.result("ideal_dim", ideal.dim());
    let c = complete(&algebra, &ideal);
    report.result(
        "tower_dims",
        c.tower_dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
    );
    report.result("stable_exponent", c.stable_exponent);
    report.result("dim_completed", c.completed.dim());
    report.result("dim_ker_kappa", c.kernel_kappa.dim());
    if c.stable_exponent <= algebra.dim() + 1 {
        report.pass("tower_stabilizes");
    } else {
        report.fail("tower_stabilizes", format!("exponent {}", c.stable_exponent));
    }
    if c.transitions.iter().all(|t| t.is_surjective()) {
        report.pass("transitions_surjective");
    } else {
        report.fail("transitions_surjective", "a transition map is not onto");
    }
    report.pass("kappa_kernel_is_stable_power");
    Ok(report)
}

fn cmd_hausdorff(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 1, usize::MAX)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    let mut session = session_for(opts);
    let mut report = Report::new("hausdorff");
    base_inputs(&mut report, opts);
    if opts.positional.len() >= 2 {
        let summands = load_summands(opts, &algebra)?;
        match hausdorff_localize(&algebra, &summands, &mut session) {
            Ok(hr) => {
                report.result("dim_AM", hr.lfr.dim());
                report.result("m_dim", hr.m_dim);
                report.result("dim_ker_kappa", hr.kernel_kappa.dim());
                report.result("dim_quotient", hr.quotient.algebra.dim());
                report.result("dim_H", hr.h.dim());
                report.pass("summands_simple");
                check_bool(&mut report, "hausdorff_m_zero", hr.m_dim == 0, || {
                    format!("m has dimension {}", hr.m_dim)
                });
                check_bool(&mut report, "hausdorff_H_iso_AM", hr.comparison_is_iso, || {
                    format!("dims {} vs {}", hr.h.dim(), hr.lfr.dim())
                });
            }
            Err(e) => push_localize_failure(&mut report, &e),
        }
    } else {
        if !algebra.is_commutative() {
            return Err(CliError::Input(
                "hausdorff without modules requires a commutative algebra (pass module files for the general form)"
                    .into(),
            ));
        }
        let mds = maximal_ideals(&algebra, &mut session)
            .map_err(|e| CliError::Input(e.to_string()))?;
        report.result("num_maximal_ideals", mds.len());
        for (k, md) in mds.iter().enumerate() {
            let ch = hausdorff_commutative(&algebra, md)
                .map_err(|e| CliError::Input(e.to_string()))?;
            report.result(format!("m{k}.tower_dims"), ch
                .completion
                .tower_dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","));
            report.result(format!("m{k}.dim_completed"), ch.completion.completed.dim());
            report.result(format!("m{k}.dim_H"), ch.h.algebra.dim());
            check_bool(
                &mut report,
                format!("hausdorff_embedding.m{k}"),
                ch.comparison_injective,
                || "H does not embed into the completion".to_string(),
            );
        }
    }
    Ok(report)
}

fn check_bool(
    report: &mut Report,
    name: impl Into<String>,
    ok: bool,
    witness: impl FnOnce() -> String,
) {
    if ok {
        report.pass(name);
    } else {
        report.fail(name, witness());
    }
}

/// The comparison check name: plain for a unique maximal ideal (the
/// classical local case), indexed otherwise.
fn iso_check_name(num_ideals: usize, k: usize) -> String {
    if num_ideals == 1 {
        "lemma_AM_iso_Am".to_string()
    } else {
        format!("lemma_AM_iso_Am.m{k}")
    }
}

fn cmd_oracle_compare(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 1, 1)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    if !algebra.is_commutative() {
        return Err(CliError::Input(format!(
            "{}: oracle-compare requires a commutative algebra",
            opts.positional[0]
        )));
    }
    let mut session = session_for(opts);
    let mut report = Report::new("oracle-compare");
    base_inputs(&mut report, opts);
    run_oracle_section(&mut report, &algebra, &mut session, true).map_err(CliError::Input)?;
    Ok(report)
}

/// Shared by `oracle-compare` and `verify`: compare `A_M` against `A_m`
/// at every maximal ideal.
fn run_oracle_section(
    report: &mut Report,
    algebra: &Arc<AlgebraPresentation>,
    session: &mut Session,
    with_results: bool,
) -> Result<(), String> {
    let mds = maximal_ideals(algebra, session).map_err(|e| e.to_string())?;
    let simple_list = simples(algebra, session);
    if with_results {
        report.result("num_maximal_ideals", mds.len());
    }
    let mut local_total = 0usize;
    for (k, md) in mds.iter().enumerate() {
        let module = simple_list
            .iter()
            .find(|s| s.annihilator().space() == md.ideal.space())
            .ok_or_else(|| "no simple matches a maximal ideal".to_string())?;
        let oc = oracle_compare(algebra, module, session).map_err(|e| e.to_string())?;
        local_total += oc.local.algebra.dim();
        if with_results {
            report.result(format!("m{k}.residue_dim"), md.residue_dim);
            report.result(format!("m{k}.dim_AM"), oc.dim_am);
            report.result(format!("m{k}.dim_Am"), oc.local.algebra.dim());
        }
        let name = iso_check_name(mds.len(), k);
        match &oc.outcome {
            OracleOutcome::Iso { dim, .. } => report.check(
                name,
                CheckStatus::Pass,
                Some(format!("isomorphism of dimension {dim} verified")),
            ),
            OracleOutcome::Mismatch { dim_am, dim_classical, nilradical_dim, error } => report
                .fail(
                    name,
                    format!(
                        "dims {dim_am} vs {dim_classical}; nilradical dim {nilradical_dim}; {error}"
                    ),
                ),
        }
    }
    check_bool(report, "local_dims_sum", local_total == algebra.dim(), || {
        format!("Σ dim A_m = {local_total} but dim A = {}", algebra.dim())
    });
    Ok(())
}

fn cmd_verify(opts: &Options) -> Result<Report, CliError> {
    want_args(opts, 1, 1)?;
    let (algebra, _) = load_algebra(&opts.positional[0])?;
    let mut session = session_for(opts);
    let mut report = verify_report(&algebra, &mut session).map_err(CliError::Input)?;
    base_inputs(&mut report, opts);
    Ok(report)
}

/// The full invariant suite on one algebra, also exposed through the C
/// interface. Fails with a message only when a *precondition* breaks
/// (e.g. no simple matches a maximal ideal); mathematical findings land
/// in the report's checks.
pub fn verify_report(
    algebra: &Arc<AlgebraPresentation>,
    session: &mut Session,
) -> Result<Report, String> {
    let mut report = Report::new("verify");
    report.result("algebra", algebra.name());
    report.result("dim", algebra.dim());
    report.result("commutative", algebra.is_commutative());

    // simples of the regular module
    let (reps, mults) = sorted_simple_classes(algebra, session);
    report.result("num_classes", reps.len());
    let mut total = 0usize;
    for (k, (rep, mult)) in reps.iter().zip(&mults).enumerate() {
        report.result(format!("S{k}.dim"), rep.dim());
        report.result(format!("S{k}.mult"), mult);
        total += rep.dim() * mult;
    }
    check_bool(&mut report, "chop_partition", total == algebra.dim(), || {
        format!("Σ dim·mult = {total} but dim A = {}", algebra.dim())
    });

    // per-simple: Schur, localization, collapse
    for (k, rep) in reps.iter().enumerate() {
        match localize(algebra, std::slice::from_ref(rep), session) {
            Ok(l) => {
                push_schur_check(&mut report, &format!("schur_division.S{k}"), l.division().verified);
                report.result(format!("S{k}.dim_AM"), l.dim());
                check_bool(
                    &mut report,
                    format!("collapse_im_eta.S{k}"),
                    l.dim() == l.eta().map.rank(),
                    || format!("dim A_M = {} vs rank η = {}", l.dim(), l.eta().map.rank()),
                );
                report.pass(format!("unit_condition.S{k}"));
            }
            Err(e) => report.fail(format!("schur_division.S{k}"), e.to_string()),
        }
    }

    // pairwise products of distinct simples must decompose
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let pair = [reps[i].clone(), reps[j].clone()];
            let name = format!("lemma_product.S{i}S{j}");
            match product_compare(algebra, &pair, session) {
                Ok(pc) => check_bool(&mut report, name, pc.is_isomorphism, || {
                    format!(
                        "dims {} vs {}",
                        pc.combined.dim(),
                        pc.factors.iter().map(|f| f.dim()).sum::<usize>()
                    )
                }),
                Err(e) => report.fail(name, e.to_string()),
            }
        }
    }

    // Hausdorff localization over all simples at once
    match hausdorff_localize(algebra, &reps, session) {
        Ok(hr) => {
            report.result("dim_AM_all", hr.lfr.dim());
            check_bool(&mut report, "hausdorff_m_zero", hr.m_dim == 0, || {
                format!("m has dimension {}", hr.m_dim)
            });
            check_bool(&mut report, "hausdorff_H_iso_AM", hr.comparison_is_iso, || {
                format!("dims {} vs {}", hr.h.dim(), hr.lfr.dim())
            });
        }
        Err(e) => report.fail("hausdorff_H_iso_AM", e.to_string()),
    }

    // commutative-only: the classical oracle and its completion embedding
    if algebra.is_commutative() {
        run_oracle_section(&mut report, algebra, session, false)?;
        let mds = maximal_ideals(algebra, session).map_err(|e| e.to_string())?;
        for (k, md) in mds.iter().enumerate() {
            let ch = hausdorff_commutative(algebra, md).map_err(|e| e.to_string())?;
            check_bool(
                &mut report,
                format!("hausdorff_embedding.m{k}"),
                ch.comparison_injective,
                || "H does not embed into the completion".to_string(),
            );
        }
    }
    Ok(report)
}
