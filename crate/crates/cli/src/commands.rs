use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qramp_core::access::{self, AccessReport, SizeSummary, SubsetRecord};
use qramp_core::field::FieldDescriptor;
use qramp_core::oracle::{self, Ensemble, StateVector};
use qramp_core::scheme::{ConstructionSpec, Provenance, Scheme};
use qramp_core::{NestedPair, ShareSet};

use crate::args::{AnalyzeArgs, BuildArgs, CheckKind, Format, Selector, SimulateArgs, Source, VerifyArgs};
use crate::format::{sig12, table};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_spec(text: &str, origin: &str) -> Result<ConstructionSpec> {
    ConstructionSpec::from_json(text).map_err(|e| CliError::Io {
        path: origin.to_string(),
        message: e.to_string(),
    })
}

fn load(source: &Source) -> Result<Scheme> {
    if let Some(path) = &source.scheme {
        return Scheme::from_json(&read(path)?).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        });
    }
    let spec = match (&source.spec, &source.inline) {
        (Some(path), _) => parse_spec(&read(path)?, &path.display().to_string())?,
        (None, Some(text)) => parse_spec(text, "<inline>")?,
        (None, None) => return Err(CliError::Usage("a scheme source is required".into())),
    };
    Ok(Scheme::build(&spec)?)
}

fn subsets(selector: &Selector, n: usize) -> Result<Vec<ShareSet>> {
    if let Some(list) = &selector.subset {
        return Ok(vec![ShareSet::parse(n, list)?]);
    }
    if n > access::MAX_CLASSIFY_PARTICIPANTS {
        return Err(qramp_core::Error::TooManyParticipants {
            n,
            max: access::MAX_CLASSIFY_PARTICIPANTS,
        }
        .into());
    }
    Ok(ShareSet::all_subsets(n).collect())
}

#[derive(Serialize)]
struct SchemeSummary {
    field: FieldDescriptor,
    n: usize,
    secret_dim: usize,
    dim_c1: usize,
    dim_c2: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

fn summary(scheme: &Scheme) -> SchemeSummary {
    let p = &scheme.pair;
    SchemeSummary {
        field: p.field().descriptor(),
        n: p.n(),
        secret_dim: p.secret_dim(),
        dim_c1: p.c1().dim(),
        dim_c2: p.c2().dim(),
        provenance: scheme.provenance.clone(),
    }
}

fn summary_line(s: &SchemeSummary) -> String {
    format!(
        "q = {}, n = {}, dim C1 = {}, dim C2 = {}, secret qudits = {}",
        s.field.p.pow(s.field.m),
        s.n,
        s.dim_c1,
        s.dim_c2,
        s.secret_dim
    )
}

pub fn build(args: &BuildArgs) -> Result<()> {
    let scheme = load(&args.source)?;
    let text = scheme.to_json()? + "\n";
    match &args.output {
        Some(path) => {
            write(path, &text)?;
            eprintln!("wrote {} ({})", path.display(), summary_line(&summary(&scheme)));
        }
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ThresholdComparison {
    genus: usize,
    m1: usize,
    m2: usize,
    threshold: i64,
    /// every listed J with |J| >= threshold is qualified with forbidden complement
    holds: bool,
    checked: usize,
}

fn threshold_comparison(scheme: &Scheme, records: &[SubsetRecord]) -> Result<Option<ThresholdComparison>> {
    let Some(ag) = scheme.ag_instance()? else { return Ok(None) };
    let threshold = ag.theorem2_threshold();
    let n = scheme.pair.n();
    let mut holds = true;
    let mut checked = 0;
    for r in records.iter().filter(|r| r.size as i64 >= threshold) {
        let j = ShareSet::from_mask(n, r.mask)?;
        holds &= r.qualified && access::is_forbidden(&scheme.pair, &j.complement());
        checked += 1;
    }
    Ok(Some(ThresholdComparison {
        genus: ag.genus(),
        m1: ag.m1,
        m2: ag.m2,
        threshold,
        holds,
        checked,
    }))
}

#[derive(Serialize)]
struct AnalyzeReport {
    scheme: SchemeSummary,
    records: Vec<SubsetRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_size: Option<Vec<SizeSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    largest_forbidden_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    smallest_qualified_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monotone: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_law: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<ThresholdComparison>,
}

fn status(r: &SubsetRecord) -> &'static str {
    match (r.qualified, r.forbidden) {
        (true, _) => "qualified",
        (false, true) => "forbidden",
        _ => "intermediate",
    }
}

pub fn analyze(args: &AnalyzeArgs) -> Result<()> {
    let scheme = load(&args.source)?;
    let pair = &scheme.pair;
    let mut report = if args.selector.subset.is_some() {
        let j = subsets(&args.selector, pair.n())?.remove(0);
        AnalyzeReport {
            scheme: summary(&scheme),
            records: vec![access::subset_record(pair, &j)?],
            per_size: None,
            largest_forbidden_size: None,
            smallest_qualified_size: None,
            monotone: None,
            complement_law: None,
            threshold: None,
        }
    } else {
        subsets(&args.selector, pair.n())?;
        let AccessReport {
            records,
            per_size,
            largest_forbidden_size,
            smallest_qualified_size,
            monotone,
            complement_law,
            ..
        } = access::classify_all(pair)?;
        let mut records = records;
        records.sort_by_key(|r| (r.size, r.mask));
        AnalyzeReport {
            scheme: summary(&scheme),
            records,
            per_size: Some(per_size),
            largest_forbidden_size,
            smallest_qualified_size,
            monotone: Some(monotone),
            complement_law: Some(complement_law),
            threshold: None,
        }
    };
    report.threshold = threshold_comparison(&scheme, &report.records)?;

    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).map_err(qramp_core::Error::from)?),
        Format::Csv => print!("{}", access::records_to_csv(&report.records.iter().collect::<Vec<_>>())?),
        Format::Human => print!("{}", render_analysis(&report)),
    }
    Ok(())
}

fn render_analysis(report: &AnalyzeReport) -> String {
    let mut out = summary_line(&report.scheme) + "\n\n";
    let rows: Vec<Vec<String>> = report
        .records
        .iter()
        .map(|r| {
            let members: Vec<String> = r.members.iter().map(|m| m.to_string()).collect();
            vec![
                format!("{{{}}}", members.join(",")),
                r.size.to_string(),
                r.mask.to_string(),
                r.reconstructible_qudits.to_string(),
                r.holevo.to_string(),
                r.coherent_info.to_string(),
                status(r).to_string(),
            ]
        })
        .collect();
    out += &table(&["J", "|J|", "mask", "qudits", "K_J", "coherent", "status"], &rows);
    if let Some(per_size) = &report.per_size {
        out += "\n";
        let rows: Vec<Vec<String>> = per_size
            .iter()
            .map(|s| {
                vec![
                    s.size.to_string(),
                    s.subsets.to_string(),
                    s.qualified.to_string(),
                    s.forbidden.to_string(),
                    s.intermediate.to_string(),
                ]
            })
            .collect();
        out += &table(&["|J|", "subsets", "qualified", "forbidden", "intermediate"], &rows);
        let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
        out += &format!(
            "\nlargest forbidden size: {}, smallest qualified size: {}\n",
            opt(report.largest_forbidden_size),
            opt(report.smallest_qualified_size)
        );
        out += &format!(
            "monotone: {}, complements of qualified sets forbidden: {}\n",
            report.monotone.unwrap_or(false),
            report.complement_law.unwrap_or(false)
        );
    }
    if let Some(t) = &report.threshold {
        out += &format!(
            "curve genus {}, m1 = {}, m2 = {}: threshold {} {} ({} subsets at or above it)\n",
            t.genus,
            t.m1,
            t.m2,
            t.threshold,
            if t.holds { "holds" } else { "VIOLATED" },
            t.checked
        );
    }
    out
}

#[derive(Serialize)]
struct CheckResult {
    name: String,
    passed: bool,
    cases: usize,
    detail: String,
}

impl CheckResult {
    fn new(kind: CheckKind, passed: bool, cases: usize, detail: String) -> Self {
        let name = format!("{kind:?}").to_lowercase();
        CheckResult {
            name,
            passed,
            cases,
            detail,
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    scheme: SchemeSummary,
    seed: u64,
    subsets: usize,
    checks: Vec<CheckResult>,
    passed: bool,
}

fn check_routes(pair: &NestedPair, js: &[ShareSet]) -> CheckResult {
    let mut bad = Vec::new();
    for j in js {
        if let Err(e) = access::qualified_witness(pair, j) {
            bad.push(e.to_string());
        }
    }
    let detail = bad.first().cloned().unwrap_or_else(|| "all routes agree".into());
    CheckResult::new(CheckKind::Routes, bad.is_empty(), js.len(), detail)
}

fn check_oracle(pair: &NestedPair, ens: &Ensemble, js: &[ShareSet], kind: CheckKind) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut first_bad = None;
    for j in js {
        let (oracle, closed) = match kind {
            CheckKind::Holevo => (ens.holevo(j)?, qramp_core::info::holevo_closed(pair, j)),
            _ => (ens.coherent(j)?, qramp_core::info::coherent_info_closed(pair, j)),
        };
        let d = (oracle - closed as f64).abs();
        worst = worst.max(d);
        if d > oracle::TOLERANCE && first_bad.is_none() {
            first_bad = Some(format!("J = {j}: simulated {} vs closed form {closed}", sig12(oracle)));
        }
    }
    let passed = first_bad.is_none();
    let detail = first_bad.unwrap_or_else(|| format!("max deviation {}", sig12(worst)));
    Ok(CheckResult::new(kind, passed, js.len(), detail))
}

fn check_isometry(pair: &NestedPair, rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let q = pair.field().order();
    let t = pair.secret_dim();
    let mut worst: f64 = 0.0;
    let trials = 5;
    for _ in 0..trials {
        let u = StateVector::random(rng, q, t)?;
        let v = StateVector::random(rng, q, t)?;
        let before = u.inner(&v)?;
        let after = oracle::encode(pair, &u)?.inner(&oracle::encode(pair, &v)?)?;
        worst = worst.max((before - after).norm());
    }
    Ok(CheckResult::new(
        CheckKind::Isometry,
        worst <= oracle::TOLERANCE,
        trials,
        format!("max inner product deviation {}", sig12(worst)),
    ))
}

fn check_decode(pair: &NestedPair, js: &[ShareSet], rng: &mut ChaCha8Rng) -> Result<CheckResult> {
    let q = pair.field().order();
    let l = pair.secret_dim();
    let mut worst: f64 = 1.0;
    let mut cases = 0;
    let mut first_bad = None;
    for j in js {
        if j.is_empty() || access::reconstructible_qudits(pair, j) == 0 {
            continue;
        }
        let circuit = oracle::build_decoder(pair, j)?;
        let dv = circuit.reconstructed_qudits();
        let beta = StateVector::random(rng, q, dv)?;
        let gamma = StateVector::random(rng, q, l - dv)?;
        let secret = circuit.product_secret(&beta, &gamma)?;
        let out = oracle::decode_with(&circuit, &oracle::encode(pair, &secret)?)?;
        let mut fid = oracle::fidelity(&out.reconstructed, &beta)?;
        if dv == l {
            let whole = StateVector::random(rng, q, l)?;
            let out = oracle::decode_with(&circuit, &oracle::encode(pair, &whole)?)?;
            fid = fid.min(oracle::fidelity(&out.reconstructed, &whole)?);
        }
        worst = worst.min(fid);
        cases += 1;
        if fid < 1.0 - oracle::TOLERANCE && first_bad.is_none() {
            first_bad = Some(format!("J = {j}: fidelity {}", sig12(fid)));
        }
    }
    let passed = first_bad.is_none();
    let detail = first_bad.unwrap_or_else(|| format!("min fidelity {}", sig12(worst)));
    Ok(CheckResult::new(CheckKind::Decode, passed, cases, detail))
}

fn check_forbidden(pair: &NestedPair, ens: &Ensemble, js: &[ShareSet]) -> Result<CheckResult> {
    let mut first_bad = None;
    let mut forbidden = 0;
    for j in js {
        let closed = access::is_forbidden(pair, j);
        let simulated = ens.holevo(j)?.abs() <= oracle::TOLERANCE && ens.state_independent(j, oracle::TOLERANCE)?;
        forbidden += usize::from(closed);
        if closed != simulated && first_bad.is_none() {
            first_bad = Some(format!("J = {j}: closed form {closed}, simulation {simulated}"));
        }
    }
    let passed = first_bad.is_none();
    let detail = first_bad.unwrap_or_else(|| format!("{forbidden} forbidden sets confirmed"));
    Ok(CheckResult::new(CheckKind::Forbidden, passed, js.len(), detail))
}

fn check_theorem(scheme: &Scheme, js: &[ShareSet]) -> Result<CheckResult> {
    let Some(ag) = scheme.ag_instance()? else {
        return Ok(CheckResult::new(CheckKind::Theorem, true, 0, "skipped: not a curve scheme".into()));
    };
    let pair = &scheme.pair;
    let threshold = ag.theorem2_threshold();
    let mut first_bad = None;
    let mut counted = true;
    for j in js {
        if j.len() as i64 >= threshold
            && !(access::is_qualified(pair, j)? && access::is_forbidden(pair, &j.complement()))
            && first_bad.is_none()
        {
            first_bad = Some(format!("J = {j} is at or above threshold {threshold} but not qualified"));
        }
        match ag.theorem3_qudits(j) {
            Ok(t3) => {
                let direct = access::reconstructible_qudits(pair, j);
                if t3 != direct && first_bad.is_none() {
                    first_bad = Some(format!("J = {j}: function-space count {t3} vs {direct}"));
                }
            }
            Err(qramp_core::Error::DegreeTooLarge { .. }) => counted = false,
            Err(e) => return Err(e.into()),
        }
    }
    let passed = first_bad.is_none();
    let detail = first_bad.unwrap_or_else(|| {
        let counts = if counted { "qudit counts agree" } else { "qudit counts skipped (m1 >= n)" };
        format!("threshold {threshold} holds; {counts}")
    });
    Ok(CheckResult::new(CheckKind::Theorem, passed, js.len(), detail))
}

pub fn verify(args: &VerifyArgs) -> Result<()> {
    let scheme = load(&args.source)?;
    let pair = &scheme.pair;
    let js = subsets(&args.selector, pair.n())?;
    let mut kinds = if args.checks.is_empty() {
        vec![
            CheckKind::Routes,
            CheckKind::Holevo,
            CheckKind::Coherent,
            CheckKind::Isometry,
            CheckKind::Decode,
            CheckKind::Forbidden,
            CheckKind::Theorem,
        ]
    } else {
        args.checks.clone()
    };
    kinds.sort();
    kinds.dedup();
    let needs_ensemble = kinds
        .iter()
        .any(|k| matches!(k, CheckKind::Holevo | CheckKind::Coherent | CheckKind::Forbidden));
    let ensemble = if needs_ensemble { Some(Ensemble::new(pair)?) } else { None };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks = Vec::new();
    for kind in kinds {
        let result = match kind {
            CheckKind::Routes => check_routes(pair, &js),
            CheckKind::Holevo | CheckKind::Coherent => check_oracle(pair, ensemble.as_ref().unwrap(), &js, kind)?,
            CheckKind::Isometry => check_isometry(pair, &mut rng)?,
            CheckKind::Decode => check_decode(pair, &js, &mut rng)?,
            CheckKind::Forbidden => check_forbidden(pair, ensemble.as_ref().unwrap(), &js)?,
            CheckKind::Theorem => check_theorem(&scheme, &js)?,
        };
        checks.push(result);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let report = VerifyReport {
        scheme: summary(&scheme),
        seed: args.seed,
        subsets: js.len(),
        passed: failed == 0,
        checks,
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).map_err(qramp_core::Error::from)?),
        Format::Csv => {
            println!("check,passed,cases,detail");
            for c in &report.checks {
                println!("{},{},{},\"{}\"", c.name, c.passed, c.cases, c.detail.replace('"', "\"\""));
            }
        }
        Format::Human => {
            println!("{}", summary_line(&report.scheme));
            println!("seed {}, {} subsets", report.seed, report.subsets);
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                println!("{mark} {:<10} {:>5} cases  {}", c.name, c.cases, c.detail);
            }
        }
    }
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

#[derive(Serialize)]
struct SimulateReport {
    subset: Vec<usize>,
    qualified: bool,
    reconstructed_qudits: usize,
    /// participants whose qudits hold the reconstructed part
    output_qudits: Vec<usize>,
    secret_kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    fidelity: Option<f64>,
    reconstructed_entropy: f64,
    reconstructed_purity: f64,
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let scheme = load(&args.source)?;
    let pair = &scheme.pair;
    let j = ShareSet::parse(pair.n(), &args.subset)?;
    let circuit = oracle::build_decoder(pair, &j)?;
    let q = pair.field().order();
    let l = pair.secret_dim();
    let dv = circuit.reconstructed_qudits();
    let qualified = dv == l;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    let (secret, reference, kind) = if let Some(path) = &args.secret {
        let secret = StateVector::from_json(&read(path)?).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let reference = qualified.then(|| secret.clone());
        (secret, reference, "file")
    } else if args.product {
        let beta = StateVector::random(&mut rng, q, dv)?;
        let gamma = StateVector::random(&mut rng, q, l - dv)?;
        (circuit.product_secret(&beta, &gamma)?, Some(beta), "product")
    } else {
        let secret = StateVector::random(&mut rng, q, l)?;
        let reference = qualified.then(|| secret.clone());
        (secret, reference, "random")
    };
    let out = oracle::decode_with(&circuit, &oracle::encode(pair, &secret)?)?;
    let fidelity = match &reference {
        Some(r) => Some(oracle::fidelity(&out.reconstructed, r)?),
        None => None,
    };
    let purity: f64 = out.reconstructed.entries().values().map(|v| v.norm_sqr()).sum();
    let report = SimulateReport {
        subset: j.members().iter().map(|i| i + 1).collect(),
        qualified,
        reconstructed_qudits: dv,
        output_qudits: circuit.output_qudits().members().iter().map(|i| i + 1).collect(),
        secret_kind: kind,
        fidelity,
        reconstructed_entropy: oracle::von_neumann_entropy(&out.reconstructed)?,
        reconstructed_purity: purity,
    };
    if let Some(path) = &args.output {
        write(path, &(out.state.to_json()? + "\n"))?;
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).map_err(qramp_core::Error::from)?),
        Format::Csv => {
            println!("subset,qualified,reconstructed_qudits,secret,fidelity,entropy,purity");
            let members: Vec<String> = report.subset.iter().map(|m| m.to_string()).collect();
            println!(
                "{},{},{},{},{},{},{}",
                members.join(" "),
                report.qualified,
                report.reconstructed_qudits,
                report.secret_kind,
                report.fidelity.map(sig12).unwrap_or_default(),
                sig12(report.reconstructed_entropy),
                sig12(report.reconstructed_purity)
            );
        }
        Format::Human => {
            println!("{}", summary_line(&summary(&scheme)));
            println!(
                "J = {j}: {} of {l} secret qudits reconstructed on participants {:?}",
                report.reconstructed_qudits, report.output_qudits
            );
            println!("secret: {}", report.secret_kind);
            match report.fidelity {
                Some(f) => println!("fidelity: {}", sig12(f)),
                None => println!("fidelity: n/a (secret is not a product over the reconstructible part)"),
            }
            println!("reconstructed entropy: {}", sig12(report.reconstructed_entropy));
            println!("reconstructed purity: {}", sig12(report.reconstructed_purity));
        }
    }
    Ok(())
}
