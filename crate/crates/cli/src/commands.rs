use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use hjkit::instances::Coloring;
use hjkit::search::{
    hj_number, vdw_number, vdw_via_hj, witness_search, Budget, Certificate, NumberOutcome, NumberReport,
    SearchConfig, StepResult, WitnessInstance, WitnessOutcome,
};
use hjkit::semigroup::{
    is_nice_subsemigroup, parse_semigroup_file, render_semigroup_file, validate_retraction, FamilyError,
    FiniteFamily, FiniteSemigroup, NicenessViolation, RetractionViolation, SemigroupError, SemigroupFile,
};
use hjkit::ultra::{
    build_agreement_set, check_fip, check_lemma2_equivalence, check_prop_tensor, check_prop_tensor_for_retraction,
    endomorphisms, transformation_corpus, PrincipalUltrafilter,
};
use hjkit::{SubsetQuery, Verdict};

use crate::style::Style;
use crate::{
    CheckPropArgs, Cli, Command, CorpusArgs, HjArgs, Lemma2Args, SearchArgs, Status, UltraCommand, ValidateArgs,
    VdwArgs, WitnessArgs,
};

pub fn run(cli: Cli) -> Result<Status> {
    let style = Style::detect();
    if let Some(path) = cli.verify {
        return verify(&path, &style);
    }
    match cli.command.expect("clap requires a subcommand or --verify") {
        Command::Validate(a) => validate(a, &style),
        Command::Witness(a) => witness(a),
        Command::Hj(a) => hj(a),
        Command::Vdw(a) => vdw(a),
        Command::Ultra(UltraCommand::CheckProp(a)) => check_prop(a, &style),
        Command::Ultra(UltraCommand::Lemma2(a)) => lemma2(a, &style),
        Command::Ultra(UltraCommand::Corpus(a)) => corpus(a),
    }
}

fn verify(path: &Path, style: &Style) -> Result<Status> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match Certificate::verify_text(&text) {
        Ok(cert) => {
            println!("{}: {} ({}, witness {})", style.pass(), path.display(), cert.sigma_family, short(&cert.witness));
            Ok(Status::Success)
        }
        Err(e) => {
            println!("{}: {}: {e}", style.fail(), path.display());
            Ok(Status::Negative)
        }
    }
}

fn short(s: &str) -> String {
    if s.chars().count() <= 40 {
        s.to_string()
    } else {
        format!("{}…", s.chars().take(40).collect::<String>())
    }
}

fn load_semigroup_file(path: &Path) -> Result<SemigroupFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_semigroup_file(&text).with_context(|| format!("{}", path.display()))
}

fn load_family(path: &Path) -> Result<FiniteFamily> {
    let file = load_semigroup_file(path)?;
    match file.family() {
        Ok(Some(f)) => Ok(f),
        Ok(None) => bail!("{} declares no retraction family (needs \"T:\" and \"retraction:\" lines)", path.display()),
        Err(e) => bail!("{}: {e}", path.display()),
    }
}

fn parse_elements(text: &str, order: usize, what: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v < order => Ok(v),
            Ok(v) => bail!("{what}: element {v} outside 0..{order}"),
            Err(_) => bail!("{what}: expected an element index, found {t:?}"),
        })
        .collect()
}

fn describe_table_error(e: &SemigroupError) -> String {
    match e {
        SemigroupError::AssociativityViolation { i, j, k } => {
            format!("associativity fails at ({i}, {j}, {k})")
        }
        other => other.to_string(),
    }
}

fn describe_niceness(v: &NicenessViolation) -> String {
    match v {
        NicenessViolation::NotClosed { a, b, product } => format!("{a} • {b} = {product} leaves T"),
        NicenessViolation::NotIdeal { a, b, product } => {
            format!("{a} • {b} = {product} is in T although a factor is not")
        }
    }
}

fn describe_retraction(v: &RetractionViolation) -> String {
    match v {
        RetractionViolation::WrongLength { expected, found } => format!("{found} images, expected {expected}"),
        RetractionViolation::OutOfCarrier { element, image } => format!("{element} ↦ {image} is not an element"),
        RetractionViolation::RangeOutsideSubsemigroup { element, image } => {
            format!("{element} ↦ {image}, which is outside T")
        }
        RetractionViolation::NotIdentityOnSubsemigroup { element, image } => {
            format!("{element} is in T but maps to {image}")
        }
        RetractionViolation::NotHomomorphism {
            a,
            b,
            image_of_product,
            product_of_images,
        } => format!("σ({a} • {b}) = {image_of_product} but σ({a}) • σ({b}) = {product_of_images}"),
    }
}

fn validate(a: ValidateArgs, style: &Style) -> Result<Status> {
    let file = load_semigroup_file(&a.file)?;
    let order = file.order();
    let t = match &a.subsemigroup {
        Some(text) => Some(parse_elements(text, order, "--T")?),
        None => file.subsemigroup.clone(),
    };
    let mut retractions = file.retractions.clone();
    for (i, text) in a.retractions.iter().enumerate() {
        let map = parse_elements(text, order, &format!("--retraction #{i}"))?;
        if map.len() != order {
            bail!("--retraction #{i}: {} images, expected {order}", map.len());
        }
        retractions.push(map);
    }
    if !retractions.is_empty() && t.is_none() {
        bail!("retractions need a declared T (\"T:\" line or --T)");
    }

    let sg = match file.semigroup() {
        Ok(sg) => {
            println!("table ({order} elements): {}", style.pass());
            sg
        }
        Err(e) => {
            println!("table: {} {}", style.fail(), describe_table_error(&e));
            return Ok(Status::Negative);
        }
    };
    let mut ok = true;
    if let Some(t) = t {
        let members = SubsetQuery::from_indices(order, t.iter().copied());
        match is_nice_subsemigroup(&sg, &members)? {
            Verdict::Pass => println!("T nice: {}", style.pass()),
            Verdict::Fail(v) => {
                ok = false;
                println!("T nice: {} {}", style.fail(), describe_niceness(&v));
            }
        }
        for (i, map) in retractions.iter().enumerate() {
            match validate_retraction(&sg, &members, map) {
                Verdict::Pass => println!("retraction {i}: {}", style.pass()),
                Verdict::Fail(v) => {
                    ok = false;
                    println!("retraction {i}: {} {}", style.fail(), describe_retraction(&v));
                }
            }
        }
        if ok && !retractions.is_empty() {
            if let Err(FamilyError::Duplicate { first, second }) = FiniteFamily::new(sg, members, retractions) {
                ok = false;
                println!("distinct: {} retractions {first} and {second} coincide", style.fail());
            }
        }
    }
    Ok(if ok { Status::Success } else { Status::Negative })
}

fn write_or_print(cert: &Certificate, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, cert.to_json()).with_context(|| format!("writing {}", p.display()))?;
            println!("certificate: {}", p.display());
        }
        None => print!("{}", cert.to_json()),
    }
    Ok(())
}

fn report_witness(outcome: &WitnessOutcome, out: Option<&Path>) -> Result<Status> {
    match outcome {
        WitnessOutcome::Found(cert) => {
            println!("witness v = {}", cert.witness);
            println!("images: {}", cert.images.join(" "));
            if let Some(c) = cert.color {
                println!("color: {c}");
            }
            println!("examined: {}", cert.nodes);
            write_or_print(cert, out)?;
            Ok(Status::Success)
        }
        WitnessOutcome::Exhausted { budget, examined } => {
            println!("Exhausted: no witness among {examined} candidates (budget {budget})");
            Ok(Status::Negative)
        }
    }
}

const DEFAULT_WORD_LENGTH: usize = 8;

fn witness(a: WitnessArgs) -> Result<Status> {
    let coloring = Coloring::parse(&a.coloring)?;
    if let Some(k) = a.vdw {
        let (outcome, ap) = vdw_via_hj(k, &coloring, a.max_len.unwrap_or(DEFAULT_WORD_LENGTH))?;
        if let Some(ap) = ap {
            println!(
                "progression: {} (start {}, difference {})",
                ap.terms().iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                ap.start,
                ap.difference
            );
        }
        return report_witness(&outcome, a.out.as_deref());
    }
    let (instance, budget) = match (&a.semigroup, a.alphabet) {
        (Some(path), _) => (WitnessInstance::Finite(load_family(path)?), a.max_len.unwrap_or(usize::MAX)),
        (None, Some(n)) => (WitnessInstance::classical(n), a.max_len.unwrap_or(DEFAULT_WORD_LENGTH)),
        (None, None) => unreachable!("clap requires --alphabet with --hj"),
    };
    let outcome = witness_search(&instance, &coloring, budget)?;
    report_witness(&outcome, a.out.as_deref())
}

fn config(s: &SearchArgs) -> SearchConfig {
    SearchConfig {
        budget: Budget {
            nodes: s.max_nodes,
            time: Some(Duration::from_secs(s.max_seconds)),
        },
        symmetry: s.symmetry,
        threads: s.threads as usize,
    }
}

fn report_number(
    report: &NumberReport,
    symbol: &str,
    param: &str,
    out_dir: Option<&Path>,
    file_name: impl Fn(usize) -> String,
    elapsed: Duration,
) -> Result<Status> {
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for step in &report.steps {
        match &step.result {
            StepResult::Sat(cert) => {
                let saved = match out_dir {
                    Some(dir) => {
                        let path: PathBuf = dir.join(file_name(step.param));
                        fs::write(&path, cert.to_json()).with_context(|| format!("writing {}", path.display()))?;
                        format!(", certificate {}", path.display())
                    }
                    None => String::new(),
                };
                println!("{param}={}: SAT ({} nodes{saved})", step.param, cert.nodes);
            }
            StepResult::Unsat { nodes } => println!("{param}={}: UNSAT ({nodes} nodes)", step.param),
            StepResult::BudgetExceeded { nodes } => {
                println!("{param}={}: BudgetExceeded ({nodes} nodes)", step.param)
            }
        }
    }
    let status = match report.outcome {
        NumberOutcome::Exact(v) => {
            println!("{symbol} = {v}");
            Status::Success
        }
        NumberOutcome::LowerBoundOnly(max) => {
            println!("{symbol} > {max} (lower bound only)");
            Status::Negative
        }
        NumberOutcome::BudgetExceeded { at } => {
            println!("{symbol} > {} (budget exceeded at {param}={at})", at - 1);
            Status::Budget
        }
    };
    println!("time: {:.3} s", elapsed.as_secs_f64());
    Ok(status)
}

fn hj(a: HjArgs) -> Result<Status> {
    let start = Instant::now();
    let report = hj_number(a.n, a.r, a.max_len, &config(&a.search))?;
    report_number(
        &report,
        &format!("HJ({},{})", a.n, a.r),
        "N",
        a.search.out_dir.as_deref(),
        |len| format!("hj-n{}-r{}-N{len}.json", a.n, a.r),
        start.elapsed(),
    )
}

fn vdw(a: VdwArgs) -> Result<Status> {
    let start = Instant::now();
    let k = a.k as usize;
    let report = vdw_number(k, a.r, a.max_m, &config(&a.search))?;
    report_number(
        &report,
        &format!("W({k},{})", a.r),
        "M",
        a.search.out_dir.as_deref(),
        |m| format!("vdw-k{k}-r{}-M{m}.json", a.r),
        start.elapsed(),
    )
}

fn check_prop(a: CheckPropArgs, style: &Style) -> Result<Status> {
    let k = a.k as usize;
    let mut cases = 0u64;
    if let Some(path) = &a.semigroup {
        let file = load_semigroup_file(path)?;
        if let Some(fam) = file.family().map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))? {
            let n = fam.semigroup().order();
            for sigma in 0..fam.maps().len() {
                for v in 0..n {
                    cases += 1;
                    if let Verdict::Fail(set) =
                        check_prop_tensor_for_retraction(&fam, sigma, k, PrincipalUltrafilter::new(n, v))?
                    {
                        println!("check-prop: {} retraction {sigma}, V = principal at {v}, subset {:?}", style.fail(), set.iter().collect::<Vec<_>>());
                        return Ok(Status::Negative);
                    }
                }
            }
            println!("check-prop k={k}: {} ({cases} cases over the declared retractions)", style.pass());
        } else {
            let sg = Arc::new(file.semigroup().map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?);
            if let Some(fail) = prop_on_endomorphisms(&sg, k, &mut cases)? {
                println!("check-prop: {} {fail}", style.fail());
                return Ok(Status::Negative);
            }
            println!("check-prop k={k}: {} ({cases} cases over all endomorphisms)", style.pass());
        }
        return Ok(Status::Success);
    }
    let corpus = transformation_corpus(a.corpus_order, a.count, a.seed);
    for (i, entry) in corpus.iter().enumerate() {
        let sg = Arc::new(entry.semigroup.clone());
        if let Some(fail) = prop_on_endomorphisms(&sg, k, &mut cases)? {
            println!("check-prop: {} corpus semigroup {i}: {fail}", style.fail());
            return Ok(Status::Negative);
        }
    }
    println!(
        "check-prop k={k}: {} ({cases} cases over {} semigroups, order <= {}, seed {})",
        style.pass(),
        corpus.len(),
        a.corpus_order,
        a.seed
    );
    Ok(Status::Success)
}

/// Every endomorphism, every principal `V`. Returns a description of the
/// first failure.
fn prop_on_endomorphisms(sg: &Arc<FiniteSemigroup>, k: usize, cases: &mut u64) -> Result<Option<String>> {
    for hom in endomorphisms(sg) {
        for v in sg.elements() {
            *cases += 1;
            if let Verdict::Fail(set) = check_prop_tensor(sg, sg, &hom, k, PrincipalUltrafilter::new(sg.order(), v))? {
                return Ok(Some(format!(
                    "f = {hom:?}, V = principal at {v}, subset {:?}",
                    set.iter().collect::<Vec<_>>()
                )));
            }
        }
    }
    Ok(None)
}

fn lemma2(a: Lemma2Args, style: &Style) -> Result<Status> {
    let fam = load_family(&a.semigroup)?;
    let sg = fam.semigroup();
    let report = check_lemma2_equivalence(&fam, a.colors as usize)?;
    println!("colorings of T checked: {}", report.colorings_checked);
    println!(
        "(a) {}, (b) {}, {}",
        report.statement_a,
        report.statement_b(),
        if report.consistent() { "equivalent" } else { "NOT equivalent" }
    );
    if let Some(v) = report.uniform_witness {
        println!("witness for every coloring: {}", sg.label(v));
    }
    if let Some(c) = &report.counter_coloring {
        let shown: Vec<String> = c.iter().map(|&(x, col)| format!("{}:{col}", sg.label(x))).collect();
        println!("coloring without witness: {}", shown.join(" "));
    }
    match report.agreement_in_ideal {
        Some(v) => println!("agreement point in R: {}", sg.label(v)),
        None => println!("agreement point in R: none"),
    }

    let t: Vec<usize> = fam.members().iter().collect();
    let n = sg.order();
    let sets = SubsetQuery::all_subsets(t.len())
        .map(|a| build_agreement_set(&fam, &SubsetQuery::from_indices(n, a.iter().map(|i| t[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    let fip = check_fip(&sets)?;
    match &fip {
        Verdict::Pass => println!("FIP of {{X_A : A ⊆ T}} ({} sets): {}", sets.len(), style.pass()),
        Verdict::Fail(idx) => println!("FIP of {{X_A : A ⊆ T}}: {} subfamily {idx:?}", style.fail()),
    }
    Ok(if report.consistent() && fip.passed() {
        Status::Success
    } else {
        Status::Negative
    })
}

fn corpus(a: CorpusArgs) -> Result<Status> {
    let corpus = transformation_corpus(a.order, a.count, a.seed);
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for (i, entry) in corpus.iter().enumerate() {
        let maps: Vec<String> = entry
            .transformations
            .iter()
            .map(|t| t.iter().map(u8::to_string).collect::<String>())
            .collect();
        println!(
            "{i}: order {}, degree {}, elements {}",
            entry.semigroup.order(),
            entry.degree,
            maps.join(" ")
        );
        if let Some(dir) = &a.out_dir {
            let path = dir.join(format!("corpus-{i}.sg"));
            fs::write(&path, render_semigroup_file(&entry.semigroup, None, &[]))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    println!("{} semigroups, order <= {}, seed {}", corpus.len(), a.order, a.seed);
    Ok(Status::Success)
}
