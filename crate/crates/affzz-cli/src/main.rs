use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use affzz_core::braid::{random_word, BraidGen, BraidWord};
use affzz_core::complexes::{identify, ComplexJson, Identification, ProjComplex};
use affzz_core::curves::{CurveJson, TrigradedCurve};
use affzz_core::linrep::{aks_to_rh_substitution, LinRep, RepTag};

#[derive(Parser)]
#[command(
    name = "affzz",
    version,
    about = "Braid group actions on complexes over the cyclic quiver algebra, \
             their linear shadows, and trigraded curves on the punctured disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix of a braid word in one of the linear representations.
    Matrix(MatrixArgs),
    /// Minimal complex obtained by applying a braid word to a projective module.
    Complex(ComplexArgs),
    /// Poincare polynomial of the homs from one projective into a twisted one.
    Hom(PairArgs),
    /// Trigraded intersection number through the curve pipeline.
    Itri(PairArgs),
    /// Decide whether a braid word acts as the identity or a central power.
    Identify(IdentifyArgs),
    /// Run a named verification suite.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RepChoice {
    H,
    Rh,
    Aks,
}

impl From<RepChoice> for RepTag {
    fn from(c: RepChoice) -> RepTag {
        match c {
            RepChoice::H => RepTag::H,
            RepChoice::Rh => RepTag::RH,
            RepChoice::Aks => RepTag::AKS,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteChoice {
    Relations,
    Specialization,
    InverseFunctors,
    Decat,
    HomsVsItri,
    Central,
}

impl SuiteChoice {
    fn name(self) -> &'static str {
        match self {
            SuiteChoice::Relations => "relations",
            SuiteChoice::Specialization => "specialization",
            SuiteChoice::InverseFunctors => "inverse-functors",
            SuiteChoice::Decat => "decat",
            SuiteChoice::HomsVsItri => "homs-vs-itri",
            SuiteChoice::Central => "central",
        }
    }
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    word: String,
    #[arg(long, value_enum)]
    rep: RepChoice,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ComplexArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    word: String,
    /// Index of the starting projective module.
    #[arg(long)]
    l: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    word: String,
    /// Index of the probing projective module.
    #[arg(long)]
    k: usize,
    /// Index of the starting projective module.
    #[arg(long)]
    l: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct IdentifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    word: String,
    /// Optional second word; the product word * word2^-1 is identified instead.
    #[arg(long)]
    word2: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: SuiteChoice,
    /// Strand count; all of 3..=6 when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Maximum word length where the suite enumerates or samples words.
    #[arg(long)]
    maxlen: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum AppError {
    Usage(String),
    Failed(String),
}

impl AppError {
    fn usage(e: impl std::fmt::Display) -> Self {
        AppError::Usage(e.to_string())
    }

    fn failed(e: impl std::fmt::Display) -> Self {
        AppError::Failed(e.to_string())
    }
}

fn main() -> ExitCode {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Ok(v) = std::env::var("AFFZZ_THREADS") {
        if let Ok(t) = v.parse::<usize>() {
            if t >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
        }
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_word(n: usize, text: &str) -> Result<BraidWord, AppError> {
    BraidWord::parse(n, text).map_err(AppError::usage)
}

fn check_index(label: &str, v: usize, n: usize) -> Result<(), AppError> {
    if v < 1 || v > n {
        return Err(AppError::Usage(format!("{label}={v} out of range 1..={n}")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Matrix(args) => cmd_matrix(args),
        Command::Complex(args) => cmd_complex(args),
        Command::Hom(args) => cmd_hom(args),
        Command::Itri(args) => cmd_itri(args),
        Command::Identify(args) => cmd_identify(args),
        Command::Check(args) => cmd_check(args),
    }
}

#[derive(Serialize)]
struct MatrixOut {
    n: usize,
    rep: &'static str,
    word: String,
    size: usize,
    vars: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn cmd_matrix(args: MatrixArgs) -> Result<ExitCode, AppError> {
    let tag: RepTag = args.rep.into();
    let rep = LinRep::new(tag, args.n).map_err(AppError::usage)?;
    let word = parse_word(args.n, &args.word)?;
    let m = rep.word_matrix(&word).map_err(AppError::failed)?;
    let out = MatrixOut {
        n: args.n,
        rep: tag.name(),
        word: word.to_string(),
        size: m.size(),
        vars: m.varset().names().to_vec(),
        rows: m.rows(),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable")),
        Format::Table => {
            for row in &out.rows {
                println!("{}", row.join("\t"));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ComplexOut {
    n: usize,
    word: String,
    l: usize,
    complex: ComplexJson,
}

fn cmd_complex(args: ComplexArgs) -> Result<ExitCode, AppError> {
    if args.n < 3 {
        return Err(AppError::Usage(format!("need at least 3 strands, got {}", args.n)));
    }
    check_index("l", args.l, args.n)?;
    let word = parse_word(args.n, &args.word)?;
    let c = ProjComplex::projective(args.n, args.l).apply_word(&word);
    let out = ComplexOut {
        n: args.n,
        word: word.to_string(),
        l: args.l,
        complex: c.json_form(),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable")),
        Format::Table => {
            for s in &out.complex.summands {
                println!("P{} coh={} g1={} g3={}", s.vertex, s.coh, s.g1, s.g3);
            }
            for e in &out.complex.differential {
                println!("d {} -> {}: {}", e.from, e.to, e.element);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct HomOut {
    n: usize,
    word: String,
    k: usize,
    l: usize,
    hom: String,
}

fn cmd_hom(args: PairArgs) -> Result<ExitCode, AppError> {
    if args.n < 3 {
        return Err(AppError::Usage(format!("need at least 3 strands, got {}", args.n)));
    }
    check_index("k", args.k, args.n)?;
    check_index("l", args.l, args.n)?;
    let word = parse_word(args.n, &args.word)?;
    let c = ProjComplex::projective(args.n, args.l).apply_word(&word);
    let poly = c.hom_poincare(args.k).map_err(AppError::failed)?;
    let out = HomOut {
        n: args.n,
        word: word.to_string(),
        k: args.k,
        l: args.l,
        hom: poly.to_string(),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable")),
        Format::Table => println!("{}", out.hom),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ItriOut {
    n: usize,
    word: String,
    k: usize,
    l: usize,
    itri: String,
    geometric: String,
    curve: CurveJson,
}

fn cmd_itri(args: PairArgs) -> Result<ExitCode, AppError> {
    if args.n < 3 {
        return Err(AppError::Usage(format!("need at least 3 strands, got {}", args.n)));
    }
    check_index("k", args.k, args.n)?;
    check_index("l", args.l, args.n)?;
    let word = parse_word(args.n, &args.word)?;
    let curve = TrigradedCurve::basic_curve(args.n, args.l)
        .map_err(AppError::usage)?
        .twist_word(&word)
        .map_err(AppError::failed)?;
    let itri = curve
        .trigraded_intersection_with_basic(args.k)
        .map_err(AppError::failed)?;
    let geometric = curve
        .geometric_intersection_with_basic(args.k)
        .map_err(AppError::failed)?;
    let out = ItriOut {
        n: args.n,
        word: word.to_string(),
        k: args.k,
        l: args.l,
        itri: itri.to_string(),
        geometric: geometric.to_string(),
        curve: curve.json_form(),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable")),
        Format::Table => println!("{}", out.itri),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct IdentifyOut {
    verdict: &'static str,
    n: usize,
    word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    word2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image: Option<Vec<(i64, usize, i64, i64)>>,
}

fn cmd_identify(args: IdentifyArgs) -> Result<ExitCode, AppError> {
    if args.n < 3 {
        return Err(AppError::Usage(format!("need at least 3 strands, got {}", args.n)));
    }
    let mut word = parse_word(args.n, &args.word)?;
    if let Some(second) = &args.word2 {
        word = word.concat(&parse_word(args.n, second)?.inverse());
    }
    let verdict = identify(&word).map_err(AppError::failed)?;
    let mut out = IdentifyOut {
        verdict: "identity",
        n: args.n,
        word: args.word.clone(),
        word2: args.word2.clone(),
        power: None,
        witness: None,
        image: None,
    };
    match verdict {
        Identification::Identity => {}
        Identification::CentralPower { power } => {
            out.verdict = "central_power";
            out.power = Some(power);
        }
        Identification::NonTrivial { witness, summands, .. } => {
            out.verdict = "nontrivial";
            out.witness = Some(witness);
            out.image = Some(summands.iter().map(|s| s.shift_key()).collect());
        }
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable")),
        Format::Table => match out.verdict {
            "identity" => println!("identity"),
            "central_power" => println!("central power {}", out.power.unwrap_or_default()),
            _ => println!("nontrivial, witness P{}", out.witness.unwrap_or_default()),
        },
    }
    Ok(ExitCode::SUCCESS)
}

struct Failure {
    n: usize,
    case: String,
    detail: String,
}

#[derive(Serialize)]
struct SuitePass<'a> {
    suite: &'a str,
    status: &'a str,
    cases: usize,
}

#[derive(Serialize)]
struct SuiteFail<'a> {
    suite: &'a str,
    status: &'a str,
    n: usize,
    case: &'a str,
    detail: &'a str,
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, AppError> {
    let ns: Vec<usize> = match args.n {
        Some(n) => {
            if n < 3 {
                return Err(AppError::Usage(format!("need at least 3 strands, got {n}")));
            }
            vec![n]
        }
        None => (3..=6).collect(),
    };
    let (cases, mut failures) = match args.suite {
        SuiteChoice::Relations => suite_relations(&ns),
        SuiteChoice::Specialization => suite_specialization(&ns, args.seed, args.maxlen.unwrap_or(8)),
        SuiteChoice::InverseFunctors => suite_inverse_functors(&ns),
        SuiteChoice::Decat => suite_decat(&ns, args.seed, args.maxlen.unwrap_or(8)),
        SuiteChoice::HomsVsItri => suite_homs_vs_itri(&ns, args.seed, args.maxlen.unwrap_or(3)),
        SuiteChoice::Central => suite_central(&ns),
    };
    let name = args.suite.name();
    if failures.is_empty() {
        match args.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string(&SuitePass { suite: name, status: "pass", cases })
                    .expect("serializable")
            ),
            Format::Table => println!("suite {name}: pass ({cases} cases)"),
        }
        return Ok(ExitCode::SUCCESS);
    }
    failures.sort_by(|a, b| (a.n, &a.case).cmp(&(b.n, &b.case)));
    let first = &failures[0];
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&SuiteFail {
                suite: name,
                status: "fail",
                n: first.n,
                case: &first.case,
                detail: &first.detail,
            })
            .expect("serializable")
        ),
        Format::Table => println!(
            "suite {name}: FAIL n={} case={} detail={}",
            first.n, first.case, first.detail
        ),
    }
    Ok(ExitCode::FAILURE)
}

fn all_gen_tokens(n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(2 * n + 2);
    for i in 1..=n {
        out.push(format!("s{i}"));
        out.push(format!("s{i}^-1"));
    }
    out.push("r".to_string());
    out.push("r^-1".to_string());
    out
}

fn all_gens(n: usize) -> Vec<BraidGen> {
    let mut out = Vec::with_capacity(2 * n + 2);
    for i in 1..=n {
        out.push(BraidGen::Sigma(i));
        out.push(BraidGen::SigmaInv(i));
    }
    out.push(BraidGen::Rho);
    out.push(BraidGen::RhoInv);
    out
}

fn words_up_to(n: usize, maxlen: usize) -> Vec<String> {
    let gens = all_gen_tokens(n);
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..maxlen {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for w in &layer {
            for g in &gens {
                next.push(if w.is_empty() { g.clone() } else { format!("{w} {g}") });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn suite_relations(ns: &[usize]) -> (usize, Vec<Failure>) {
    let mut cases: Vec<(usize, RepTag, String, String, String)> = Vec::new();
    for &n in ns {
        for tag in [RepTag::H, RepTag::RH, RepTag::AKS] {
            for i in 1..=n {
                for j in i + 1..=n {
                    let adjacent = j == i % n + 1 || i == j % n + 1;
                    if adjacent {
                        continue;
                    }
                    cases.push((
                        n,
                        tag,
                        format!("{} commute s{i} s{j}", tag.name()),
                        format!("s{i} s{j}"),
                        format!("s{j} s{i}"),
                    ));
                }
                let j = i % n + 1;
                cases.push((
                    n,
                    tag,
                    format!("{} braid s{i} s{j}", tag.name()),
                    format!("s{i} s{j} s{i}"),
                    format!("s{j} s{i} s{j}"),
                ));
                cases.push((
                    n,
                    tag,
                    format!("{} rotate s{i}", tag.name()),
                    format!("r s{i} r^-1"),
                    format!("s{j}"),
                ));
            }
        }
    }
    let failures = cases
        .par_iter()
        .filter_map(|(n, tag, label, wa, wb)| {
            let check = || -> Result<(), String> {
                let rep = LinRep::new(*tag, *n).map_err(|e| e.to_string())?;
                let ma = rep
                    .word_matrix(&BraidWord::parse(*n, wa).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let mb = rep
                    .word_matrix(&BraidWord::parse(*n, wb).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if ma != mb {
                    return Err(format!("matrices of {wa:?} and {wb:?} differ"));
                }
                Ok(())
            };
            check().err().map(|detail| Failure { n: *n, case: label.clone(), detail })
        })
        .collect();
    (cases.len(), failures)
}

fn suite_specialization(ns: &[usize], seed: u64, maxlen: usize) -> (usize, Vec<Failure>) {
    let mut cases: Vec<(usize, u64)> = Vec::new();
    for &n in ns {
        for s in 0..100 {
            cases.push((n, seed.wrapping_add(s)));
        }
    }
    let failures = cases
        .par_iter()
        .filter_map(|&(n, s)| {
            let word = random_word(n, s, maxlen);
            let check = || -> Result<(), String> {
                let aks = LinRep::new(RepTag::AKS, n).map_err(|e| e.to_string())?;
                let rh = LinRep::new(RepTag::RH, n).map_err(|e| e.to_string())?;
                let (target, subst) = aks_to_rh_substitution(n);
                let lhs = aks
                    .word_matrix(&word)
                    .map_err(|e| e.to_string())?
                    .specialize(&target, &subst)
                    .map_err(|e| e.to_string())?;
                let rhs = rh.word_matrix(&word).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err("specialized matrix differs from the rank-n representation".into());
                }
                Ok(())
            };
            check().err().map(|detail| Failure {
                n,
                case: format!("seed {s} word {word}"),
                detail,
            })
        })
        .collect();
    (cases.len(), failures)
}

fn suite_inverse_functors(ns: &[usize]) -> (usize, Vec<Failure>) {
    enum Case {
        Cancel(usize, usize, BraidGen),
        FullRotation(usize, usize),
        CentralIdentify(usize),
    }
    let mut cases: Vec<Case> = Vec::new();
    for &n in ns {
        for i in 1..=n {
            for g in all_gens(n) {
                cases.push(Case::Cancel(n, i, g));
            }
            cases.push(Case::FullRotation(n, i));
        }
        cases.push(Case::CentralIdentify(n));
    }
    let failures = cases
        .par_iter()
        .filter_map(|case| {
            let (n, label, result) = match case {
                Case::Cancel(n, i, g) => {
                    let check = || -> Result<(), String> {
                        for pair in [vec![*g, g.inverse()], vec![g.inverse(), *g]] {
                            let w = BraidWord::new(*n, pair).map_err(|e| e.to_string())?;
                            let c = ProjComplex::projective(*n, *i).apply_word(&w);
                            if c != ProjComplex::projective(*n, *i) {
                                return Err(format!("{w} does not cancel on P{i}"));
                            }
                        }
                        Ok(())
                    };
                    (*n, format!("cancel {g} on P{i}"), check())
                }
                Case::FullRotation(n, i) => {
                    let check = || -> Result<(), String> {
                        let w = BraidWord::new(*n, vec![BraidGen::Rho; *n])
                            .map_err(|e| e.to_string())?;
                        let c = ProjComplex::projective(*n, *i).apply_word(&w);
                        let mut expect = BTreeMap::new();
                        expect.insert((0i64, *i, 0i64, -1i64), 1usize);
                        if c.summand_multiset() != expect || c.differential().count() != 0 {
                            return Err(format!("full rotation does not shift P{i} by <-1>"));
                        }
                        Ok(())
                    };
                    (*n, format!("full rotation on P{i}"), check())
                }
                Case::CentralIdentify(n) => {
                    let check = || -> Result<(), String> {
                        let w = BraidWord::new(*n, vec![BraidGen::Rho; *n])
                            .map_err(|e| e.to_string())?;
                        match identify(&w).map_err(|e| e.to_string())? {
                            Identification::CentralPower { power: 1 } => Ok(()),
                            other => Err(format!("identify(r^{n}) returned {other:?}")),
                        }
                    };
                    (*n, "identify full rotation".to_string(), check())
                }
            };
            result.err().map(|detail| Failure { n, case: label, detail })
        })
        .collect();
    (cases.len(), failures)
}

fn suite_decat(ns: &[usize], seed: u64, maxlen: usize) -> (usize, Vec<Failure>) {
    let mut cases: Vec<(usize, u64)> = Vec::new();
    for &n in ns {
        for s in 0..50 {
            cases.push((n, seed.wrapping_add(10_000 + s)));
        }
    }
    let failures = cases
        .par_iter()
        .filter_map(|&(n, s)| {
            let word = random_word(n, s, maxlen);
            let check = || -> Result<(), String> {
                let rep = LinRep::new(RepTag::AKS, n).map_err(|e| e.to_string())?;
                let m = rep.word_matrix(&word).map_err(|e| e.to_string())?;
                for i in 1..=n {
                    let classes = ProjComplex::projective(n, i).apply_word(&word).k_class();
                    for v in 1..=n {
                        if &classes[v - 1] != m.get(v - 1, i - 1) {
                            return Err(format!(
                                "class of P{i} row {v}: complex gives {}, matrix gives {}",
                                classes[v - 1],
                                m.get(v - 1, i - 1)
                            ));
                        }
                    }
                }
                Ok(())
            };
            check().err().map(|detail| Failure {
                n,
                case: format!("seed {s} word {word}"),
                detail,
            })
        })
        .collect();
    (cases.len(), failures)
}

fn suite_homs_vs_itri(ns: &[usize], seed: u64, maxlen: usize) -> (usize, Vec<Failure>) {
    let mut cases: Vec<(usize, String, usize)> = Vec::new();
    for &n in ns {
        let mut words = words_up_to(n, maxlen);
        for s in 0..20 {
            words.push(random_word(n, seed.wrapping_add(20_000 + s), 6).to_string());
        }
        for w in words {
            for l in 1..=n {
                cases.push((n, w.clone(), l));
            }
        }
    }
    let failures = cases
        .par_iter()
        .filter_map(|(n, w, l)| {
            let check = || -> Result<(), String> {
                let word = BraidWord::parse(*n, w).map_err(|e| e.to_string())?;
                let complex = ProjComplex::projective(*n, *l).apply_word(&word);
                let curve = TrigradedCurve::basic_curve(*n, *l)
                    .map_err(|e| e.to_string())?
                    .twist_word(&word)
                    .map_err(|e| e.to_string())?;
                for k in 1..=*n {
                    let hom = complex.hom_poincare(k).map_err(|e| e.to_string())?;
                    let itri = curve
                        .trigraded_intersection_with_basic(k)
                        .map_err(|e| e.to_string())?;
                    if hom != itri {
                        return Err(format!("k={k}: hom {hom} differs from itri {itri}"));
                    }
                    let geo = curve
                        .geometric_intersection_with_basic(k)
                        .map_err(|e| e.to_string())?;
                    if num_bigint::BigInt::from(geo.twice) != itri.eval_at_one() {
                        return Err(format!("k={k}: geometric {geo} breaks the specialization"));
                    }
                }
                Ok(())
            };
            check().err().map(|detail| Failure {
                n: *n,
                case: format!("word {w:?} l={l}"),
                detail,
            })
        })
        .collect();
    (cases.len(), failures)
}

fn suite_central(ns: &[usize]) -> (usize, Vec<Failure>) {
    enum Case {
        Power(usize, i64),
        Shift(usize, usize, i64),
        Conjugation(usize, usize),
    }
    let mut cases: Vec<Case> = Vec::new();
    for &n in ns {
        for p in 1..=3 {
            cases.push(Case::Power(n, p));
            for i in 1..=n {
                cases.push(Case::Shift(n, i, p));
            }
        }
        for i in 1..=n {
            cases.push(Case::Conjugation(n, i));
        }
    }
    let failures = cases
        .par_iter()
        .filter_map(|case| {
            let (n, label, result) = match case {
                Case::Power(n, p) => {
                    let check = || -> Result<(), String> {
                        let w = BraidWord::new(*n, vec![BraidGen::Rho; *n * *p as usize])
                            .map_err(|e| e.to_string())?;
                        match identify(&w).map_err(|e| e.to_string())? {
                            Identification::CentralPower { power } if power == *p => Ok(()),
                            other => Err(format!("identify returned {other:?}")),
                        }
                    };
                    (*n, format!("identify rotation power {p}"), check())
                }
                Case::Shift(n, i, p) => {
                    let check = || -> Result<(), String> {
                        let w = BraidWord::new(*n, vec![BraidGen::Rho; *n * *p as usize])
                            .map_err(|e| e.to_string())?;
                        let c = ProjComplex::projective(*n, *i).apply_word(&w);
                        let mut expect = BTreeMap::new();
                        expect.insert((0i64, *i, 0i64, -p), 1usize);
                        if c.summand_multiset() != expect || c.differential().count() != 0 {
                            return Err(format!("rotation power {p} does not shift P{i} by <-{p}>"));
                        }
                        Ok(())
                    };
                    (*n, format!("central shift P{i} power {p}"), check())
                }
                Case::Conjugation(n, i) => {
                    let check = || -> Result<(), String> {
                        let j = i % n + 1;
                        let w = BraidWord::parse(*n, &format!("r s{i} r^-1 s{j}^-1"))
                            .map_err(|e| e.to_string())?;
                        match identify(&w).map_err(|e| e.to_string())? {
                            Identification::Identity => Ok(()),
                            other => Err(format!("identify returned {other:?}")),
                        }
                    };
                    (*n, format!("rotation conjugates s{i}"), check())
                }
            };
            result.err().map(|detail| Failure { n, case: label, detail })
        })
        .collect();
    (cases.len(), failures)
}
