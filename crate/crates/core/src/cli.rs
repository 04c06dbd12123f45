//! The `pbwq` command line.
//!
//! Exit codes: 0 success, 1 verification failure or exceeded cap, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::convex_order::{pairing_sign_report, ConvexOrder};
use crate::error::Error;
use crate::field::{Field, FieldSpec, FiniteField, Rationals};
use crate::flag_fibers::{
    fiber_point_count, interpolate_fiber_polynomial, rep_over_finite_field, z_interpolation, z_point_count,
    InterpolationReport, Verdict,
};
use crate::kostant::{
    dimension_vectors_up_to, enumerate_kp, hasse_dot, mackey_dominance_check, parse_nu, OrientationLedger,
    DEFAULT_DECOMPOSITION_CAP,
};
use crate::orders_geometry::{baumann_report, calibrate, ringel_check, CalibrationInput};
use crate::pbw_braid::Reflection;
use crate::quiver_rep::RepCatalog;
use crate::quiver_words::Quiver;
use crate::root_system::{CartanDatum, RootVector, Word};

pub const DEFAULT_LEDGER: &str = "ledger.json";
const DEFAULT_Q_LIST: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 11];

#[derive(Parser, Debug)]
#[command(name = "pbwq", version, about = "Convex orders, Kostant partitions and Dynkin quiver representations")]
struct Cli {
    /// Accepted for harness compatibility; nothing here is random.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the positive roots of a Dynkin type.
    Roots { r#type: String },
    /// Show the convex order of a reduced word of w0.
    Order {
        r#type: String,
        /// Reduced word, e.g. 2,1,2
        word: Option<String>,
        /// Use the word adapted to this quiver instead.
        #[arg(long)]
        adapted: Option<String>,
    },
    /// List the Kostant partitions of a dimension vector.
    Kp {
        quiver: String,
        nu: String,
        /// Write the Hasse diagram of the partition order (needs a ledger).
        #[arg(long)]
        hasse: Option<PathBuf>,
        #[arg(long, default_value = DEFAULT_LEDGER)]
        ledger: PathBuf,
        #[arg(long, default_value_t = 500)]
        cap: usize,
    },
    /// Run a brute-force verification sweep.
    Verify {
        check: Check,
        quiver: String,
        #[command(flatten)]
        opts: SweepOpts,
    },
    /// Fix the orientation ledger from the evidence of one quiver.
    Calibrate {
        quiver: String,
        #[arg(long, default_value = DEFAULT_LEDGER)]
        ledger: PathBuf,
        #[arg(long, default_value_t = 3)]
        nu_max: u32,
    },
    /// Point counts over finite fields.
    Count {
        what: CountKind,
        quiver: String,
        nu: String,
        #[arg(long = "q", value_delimiter = ',', num_args = 1.., required = true)]
        q: Vec<u64>,
    },
}

#[derive(Args, Debug)]
struct SweepOpts {
    /// Sweep all dimension vectors of total size at most this.
    #[arg(long, default_value_t = 3)]
    nu_max: u32,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    q_list: Option<Vec<u64>>,
    #[arg(long, default_value = DEFAULT_LEDGER)]
    ledger: PathBuf,
    /// Field for representations: Q or F<q>.
    #[arg(long, default_value = "Q")]
    field: FieldSpec,
    #[arg(long, default_value_t = DEFAULT_DECOMPOSITION_CAP)]
    cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    Ringel,
    Baumann,
    Mackey,
    Reflection,
    Evenness,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CountKind {
    Fibers,
    Z,
}

enum Failure {
    Usage(String),
    Failed(String),
    /// A completed report whose verdict is negative.
    Rejected { body: String, what: &'static str },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. }
            | Error::Verification(_)
            | Error::NoConsistentLedger(_)
            | Error::Overflow(_) => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Runs the command line with `args` (including the program name), writing
/// reports to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (code, text, diag) = match dispatch(cli.command) {
        Ok(text) => (0, text, None),
        Err(Failure::Failed(msg)) => (1, String::new(), Some(msg)),
        Err(Failure::Usage(msg)) => (2, String::new(), Some(msg)),
        Err(Failure::Rejected { body, what }) => (1, body, Some(format!("{what} verification failed"))),
    };
    let _ = out.write_all(text.as_bytes());
    if let Some(msg) = diag {
        let _ = writeln!(err, "error: {msg}");
    }
    code
}

/// Reports whose verdict is a failure still print their body.
struct Report {
    body: String,
    ok: bool,
}

fn finish(report: Report, what: &'static str) -> CmdResult {
    if report.ok {
        Ok(report.body)
    } else {
        Err(Failure::Rejected { body: report.body, what })
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Roots { r#type } => roots(&r#type),
        Command::Order { r#type, word, adapted } => order(&r#type, word.as_deref(), adapted.as_deref()),
        Command::Kp { quiver, nu, hasse, ledger, cap } => kp(&quiver, &nu, hasse.as_deref(), &ledger, cap),
        Command::Verify { check, quiver, opts } => {
            let q = load_quiver(&quiver)?;
            let (name, report) = match check {
                Check::Ringel => ("ringel", verify_ringel(&q, &opts)?),
                Check::Baumann => ("baumann", verify_baumann(&q, &opts)?),
                Check::Mackey => ("mackey", verify_mackey(&q, &opts)?),
                Check::Reflection => ("reflection", verify_reflection(&q, &opts)?),
                Check::Evenness => ("evenness", verify_evenness(&q, &opts)?),
            };
            finish(report, name)
        }
        Command::Calibrate { quiver, ledger, nu_max } => calibrate_cmd(&quiver, &ledger, nu_max),
        Command::Count { what, quiver, nu, q } => count(what, &quiver, &nu, &q),
    }
}

fn load_quiver(arg: &str) -> std::result::Result<Quiver, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        return Ok(Quiver::parse_spec(&text)?);
    }
    Quiver::from_shorthand(arg).map_err(|_| Failure::Usage(format!("{arg:?} is neither a quiver file nor a shorthand like A3linear")))
}

fn load_ledger(path: &Path) -> std::result::Result<OrientationLedger, Failure> {
    let text = std::fs::read_to_string(path).map_err(|_| {
        Failure::Usage(format!("ledger file {} not found; run `pbwq calibrate <quiver>` first", path.display()))
    })?;
    Ok(OrientationLedger::from_json(&text)?)
}

fn datum(s: &str) -> std::result::Result<Arc<CartanDatum>, Failure> {
    Ok(Arc::new(s.parse::<CartanDatum>()?))
}

fn roots(ty: &str) -> CmdResult {
    let d = datum(ty)?;
    Ok(d.positive_roots().iter().map(|r| format!("{r}\n")).collect())
}

fn order(ty: &str, word: Option<&str>, adapted: Option<&str>) -> CmdResult {
    let d = datum(ty)?;
    let word = match (word, adapted) {
        (Some(w), None) => w.parse::<Word>()?,
        (None, Some(q)) => {
            let q = load_quiver(q)?;
            if q.datum() != d.as_ref() {
                return Err(Failure::Usage(format!("quiver {q} is not of type {ty}")));
            }
            q.adapted_word_of_w0()?
        }
        _ => return Err(Failure::Usage("give either a word or --adapted <quiver>".into())),
    };
    let o = ConvexOrder::new(d, word)?;
    let mut s = format!("word\t{}\n", o.word());
    s.push_str("k\tbeta\tgamma\n");
    for k in 0..o.len() {
        let gamma: Vec<String> = o.gamma()[k].coords().iter().map(i64::to_string).collect();
        writeln!(s, "{}\t{}\t({})", k + 1, o.beta()[k], gamma.join(",")).unwrap();
    }
    s.push_str(&o.pairing_tsv());
    let signs = pairing_sign_report(&o);
    writeln!(s, "pairing signs\t{}", if signs.passed() { "ok" } else { "violated" }).unwrap();
    Ok(s)
}

fn kp(quiver: &str, nu: &str, hasse: Option<&Path>, ledger: &Path, cap: usize) -> CmdResult {
    let q = load_quiver(quiver)?;
    let nu = parse_nu(q.datum(), nu)?;
    let o = ConvexOrder::new(q.datum_arc().clone(), q.adapted_word_of_w0()?)?;
    let kps = enumerate_kp(&o, &nu);
    let mut s = String::new();
    for k in &kps {
        writeln!(s, "{k}\t{}", k.parts_string(&o)).unwrap();
    }
    if let Some(path) = hasse {
        let ledger = load_ledger(ledger)?;
        let dot = hasse_dot(&o, &nu, &ledger, cap)?;
        std::fs::write(path, dot).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn sweep(q: &Quiver, opts: &SweepOpts) -> Vec<RootVector> {
    dimension_vectors_up_to(q.rank(), opts.nu_max)
}

fn verify_ringel(q: &Quiver, opts: &SweepOpts) -> std::result::Result<Report, Failure> {
    let cat = RepCatalog::new(q, Rationals)?;
    let r = ringel_check(&cat)?;
    let mut body = format!("quiver\t{}\nword\t{}\n", r.quiver, r.word);
    body.push_str(&r.to_tsv());
    let dir = r.direction();
    writeln!(body, "matches as-printed\t{}\nmatches transposed\t{}", r.as_printed, r.transposed).unwrap();
    let mut ok = dir.is_some();
    if opts.ledger.is_file() {
        let ledger = load_ledger(&opts.ledger)?;
        let agrees = dir == Some(ledger.hom_formula_direction);
        writeln!(body, "ledger hom-formula-direction\t{}\t{}", ledger.hom_formula_direction, if agrees { "confirmed" } else { "contradicted" })
            .unwrap();
        ok &= agrees;
    }
    Ok(Report { body, ok })
}

fn verify_baumann(q: &Quiver, opts: &SweepOpts) -> std::result::Result<Report, Failure> {
    let ledger = load_ledger(&opts.ledger)?;
    let cat = RepCatalog::new(q, Rationals)?;
    let mut body = String::from("nu\tpartitions\tdisagreeing_pairs\tpassed\n");
    let mut ok = true;
    for nu in sweep(q, opts) {
        let r = baumann_report(&cat, &nu, &ledger)?;
        ok &= r.passed();
        writeln!(body, "{}\t{}\t{}\t{}", nu, r.partitions, r.mismatches.len(), r.passed()).unwrap();
    }
    Ok(Report { body, ok })
}

fn verify_mackey(q: &Quiver, opts: &SweepOpts) -> std::result::Result<Report, Failure> {
    let ledger = load_ledger(&opts.ledger)?;
    let o = ConvexOrder::new(q.datum_arc().clone(), q.adapted_word_of_w0()?)?;
    let mut body = String::from("m\tn\tachievable_per_k\tkp_leq\n");
    let mut violations = 0;
    for nu in sweep(q, opts) {
        for m in enumerate_kp(&o, &nu) {
            let r = mackey_dominance_check(&m, &o, &ledger, opts.cap)?;
            violations += r.violations().count();
            body.push_str(&r.to_tsv(false));
        }
    }
    writeln!(body, "violations\t{violations}").unwrap();
    Ok(Report { body, ok: violations == 0 })
}

fn reflection_sweep<F: Field>(q: &Quiver, opts: &SweepOpts, ledger: &OrientationLedger, field: F) -> std::result::Result<Report, Failure> {
    let mut body = String::from("i\tnu\tlambda\treflected\treflected_parts\tpassed\n");
    let mut ok = true;
    let mut compat = String::from("i\tnu\torder_compat\n");
    for i in q.sinks() {
        let r = Reflection::new(q, i, field.clone())?;
        for nu in sweep(q, opts) {
            for lambda in r.locus(&nu)? {
                ok &= r.verify_reflection(&lambda)?;
            }
            body.push_str(&r.sweep_tsv(&nu)?);
            let c = r.order_compat(&nu, ledger)?;
            ok &= c;
            writeln!(compat, "{}\t{}\t{}", i + 1, nu, c).unwrap();
        }
    }
    body.push_str(&compat);
    Ok(Report { body, ok })
}

fn verify_reflection(q: &Quiver, opts: &SweepOpts) -> std::result::Result<Report, Failure> {
    let ledger = load_ledger(&opts.ledger)?;
    match opts.field {
        FieldSpec::Rationals => reflection_sweep(q, opts, &ledger, Rationals),
        FieldSpec::Finite { p, degree } => reflection_sweep(q, opts, &ledger, FiniteField::new(p, degree)?),
    }
}

fn interpolation_line(label: &str, r: &InterpolationReport) -> String {
    let values: Vec<String> = r.values.iter().map(|(q, v)| format!("{q}:{v}")).collect();
    format!("{label}\t{}\t{}\t{}\n", values.join(","), r.polynomial_string(), r.verdict)
}

fn verify_evenness(q: &Quiver, opts: &SweepOpts) -> std::result::Result<Report, Failure> {
    let q_list = opts.q_list.clone().unwrap_or_else(|| DEFAULT_Q_LIST.to_vec());
    let cat = RepCatalog::new(q, Rationals)?;
    let mut body = String::from("nu\tlambda\tcounts\tpolynomial\tverdict\n");
    let mut ok = true;
    for nu in sweep(q, opts) {
        for lambda in enumerate_kp(cat.order(), &nu) {
            let r = interpolate_fiber_polynomial(&cat, &lambda, &q_list)?;
            ok &= r.verdict == Verdict::ConsistentWithEven;
            body.push_str(&format!("{nu}\t{}", interpolation_line(&lambda.parts_string(cat.order()), &r)));
        }
    }
    Ok(Report { body, ok })
}

fn calibrate_cmd(quiver: &str, path: &Path, nu_max: u32) -> CmdResult {
    let q = load_quiver(quiver)?;
    let cat = RepCatalog::new(&q, Rationals)?;
    let nus = dimension_vectors_up_to(q.rank(), nu_max);
    let cal = calibrate(&[CalibrationInput { catalog: &cat, nus }], DEFAULT_DECOMPOSITION_CAP)?;
    std::fs::write(path, cal.ledger.to_json()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut s = cal.evidence_tsv();
    writeln!(s, "order-direction\t{}", cal.ledger.order_direction).unwrap();
    writeln!(s, "hom-formula-direction\t{}", cal.ledger.hom_formula_direction).unwrap();
    writeln!(s, "res-large-side\t{}", cal.ledger.res_large_side).unwrap();
    writeln!(s, "ties\t{}", if cal.ties.is_empty() { "-".to_string() } else { cal.ties.join(",") }).unwrap();
    writeln!(s, "mackey-consistent\t{}", cal.mackey_consistent).unwrap();
    writeln!(s, "ledger written\t{}", path.display()).unwrap();
    Ok(s)
}

fn count(what: CountKind, quiver: &str, nu: &str, qs: &[u64]) -> CmdResult {
    let q = load_quiver(quiver)?;
    let nu = parse_nu(q.datum(), nu)?;
    let cat = RepCatalog::new(&q, Rationals)?;
    let mut s = String::new();
    match what {
        CountKind::Fibers => {
            s.push_str("lambda\tq\tfiber_count\n");
            let kps = enumerate_kp(cat.order(), &nu);
            for lambda in &kps {
                for &qq in qs {
                    let c = fiber_point_count(&rep_over_finite_field(&cat, lambda, qq)?)?;
                    writeln!(s, "{}\t{qq}\t{c}", lambda.parts_string(cat.order())).unwrap();
                }
            }
            s.push_str("lambda\tcounts\tpolynomial\tverdict\n");
            for lambda in &kps {
                let label = lambda.parts_string(cat.order());
                match interpolate_fiber_polynomial(&cat, lambda, qs) {
                    Ok(r) => s.push_str(&interpolation_line(&label, &r)),
                    Err(Error::InsufficientData(_)) => writeln!(s, "{label}\t-\t-\t{}", Verdict::Insufficient).unwrap(),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        CountKind::Z => {
            s.push_str("q\tz_count\n");
            for &qq in qs {
                writeln!(s, "{qq}\t{}", z_point_count(&cat, &nu, qq)?).unwrap();
            }
            s.push_str("nu\tcounts\tpolynomial\tverdict\n");
            s.push_str(&interpolation_line(&nu.to_string(), &z_interpolation(&cat, &nu, qs)?));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pbwq(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("pbwq").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn roots_of_a2() {
        let (code, out, _) = pbwq(&["roots", "A2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "(1,0)\n(0,1)\n(1,1)\n");
        assert_eq!(pbwq(&["roots", "E8"]).1.lines().count(), 120);
    }

    #[test]
    fn kp_lists_two_partitions() {
        let (code, out, _) = pbwq(&["kp", "A2linear", "1,1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
    }

    #[test]
    fn usage_errors_exit_2() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("ledger.json");
        assert_eq!(pbwq(&["frobnicate"]).0, 2);
        assert_eq!(pbwq(&["roots", "Q7"]).0, 2);
        assert_eq!(pbwq(&["kp", "A2linear", "1,1,1"]).0, 2);
        // order-sensitive commands need a ledger
        let (code, _, err) = pbwq(&["verify", "baumann", "A2linear", "--ledger", missing.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("calibrate"));
    }

    #[test]
    fn calibrate_then_verify() {
        let dir = tempfile::tempdir().unwrap();
        let ledger = dir.path().join("ledger.json");
        let l = ledger.to_str().unwrap();
        assert_eq!(pbwq(&["calibrate", "A2linear", "--seed", "7", "--ledger", l]).0, 0);
        let text = std::fs::read_to_string(&ledger).unwrap();
        assert!(text.contains("\"order-direction\": \"reversed\""));
        assert!(text.contains("\"hom-formula-direction\": \"transposed\""));

        assert_eq!(pbwq(&["verify", "baumann", "A2linear", "--nu-max", "3", "--ledger", l]).0, 0);
        let (code, out, _) = pbwq(&["verify", "ringel", "A2linear", "--ledger", l]);
        assert_eq!(code, 0);
        assert!(out.contains("confirmed"));
        assert_eq!(pbwq(&["verify", "reflection", "A3linear", "--nu-max", "2", "--field", "F2", "--ledger", l]).0, 0);

        // a failing sweep still prints its report
        let (code, out, err) = pbwq(&["verify", "mackey", "A2linear", "--nu-max", "2", "--ledger", l]);
        assert_eq!(code, 1);
        assert!(out.contains("violations\t"));
        assert!(err.contains("mackey verification failed"));

        let dot = dir.path().join("a2.dot");
        assert_eq!(pbwq(&["kp", "A2linear", "1,1", "--hasse", dot.to_str().unwrap(), "--ledger", l]).0, 0);
        let dot = std::fs::read_to_string(dot).unwrap();
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 1);
    }

    #[test]
    fn quiver_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d4.quiver");
        std::fs::write(&path, "# star\ntype D4\n1 -> 2\n3 -> 2\n4 -> 2\n").unwrap();
        let (code, out, _) = pbwq(&["order", "D4", "--adapted", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("pairing signs\tok"));
        assert_eq!(pbwq(&["kp", path.to_str().unwrap(), "1,2,1,1"]).0, 0);
    }

    #[test]
    fn point_counts() {
        let (code, out, _) = pbwq(&["count", "z", "A2linear", "1,1", "--q", "2,3,4,5"]);
        assert_eq!(code, 0);
        assert!(out.contains("2\t5\n3\t6\n"));
        assert!(out.contains("3 + q\tconsistent-with-even"));
        let (code, out, _) = pbwq(&["count", "fibers", "A2linear", "1,1", "--q", "2,3"]);
        assert_eq!(code, 0);
        assert!(out.contains("(0,1)+(1,0)\t3\t2\n"));
    }

    #[test]
    fn output_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let l = dir.path().join("ledger.json");
        let args = ["calibrate", "A3linear", "--ledger", l.to_str().unwrap()];
        assert_eq!(pbwq(&args).1, pbwq(&args).1);
    }
}
