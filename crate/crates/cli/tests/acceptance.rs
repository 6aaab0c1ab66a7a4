//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the terminal.
//!
//! Every expected value is re-derived here by brute force over colorings,
//! lines and progressions that this file enumerates itself.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use hjkit::instances::Coloring;
use hjkit::search::{
    hj_check, line_hypergraph, vdw_check, vdw_via_hj, CertInstance, Certificate, SearchConfig, SolveOutcome,
    SymmetrySpec, WitnessOutcome,
};
use hjkit::semigroup::{flag_family, RetractionSystem};
use hjkit::ultra::{
    build_agreement_set, check_fip, check_lemma2_equivalence, check_prop_tensor, endomorphisms,
    transformation_corpus, PrincipalUltrafilter,
};
use hjkit::SubsetQuery;

type Outcome = Result<String, String>;

fn hjkit(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hjkit"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("hjkit runs");
    (out, start.elapsed())
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Lines of `[n]^len` as point-index lists, from templates over
/// `{0..n-1} ∪ {x}`; the first letter is the most significant digit.
fn naive_lines(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for code in 0..(n + 1).pow(len as u32) {
        let mut t = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            t.push(c % (n + 1));
            c /= n + 1;
        }
        t.reverse();
        if !t.contains(&n) {
            continue;
        }
        out.push(
            (0..n)
                .map(|a| t.iter().fold(0, |acc, &s| acc * n + if s == n { a } else { s }))
                .collect(),
        );
    }
    out
}

/// `k`-term progressions in `[1..m]`, as 0-based vertex lists.
fn naive_aps(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for d in 1..m {
        for a in 1..=m {
            if a + (k - 1) * d <= m {
                out.push((0..k).map(|i| a + i * d - 1).collect());
            }
        }
    }
    out
}

fn mono_free(coloring: &[u8], edges: &[Vec<usize>]) -> bool {
    edges.iter().all(|e| e.iter().any(|&v| coloring[v] != coloring[e[0]]))
}

/// Number of `r`-colorings of `vertices` points with no monochromatic edge,
/// stopping at `cap`.
fn count_free(vertices: usize, r: u8, edges: &[Vec<usize>], cap: u64) -> u64 {
    let total = (r as u64).pow(vertices as u32);
    let mut coloring = vec![0u8; vertices];
    let mut found = 0;
    for code in 0..total {
        let mut c = code;
        for x in coloring.iter_mut() {
            *x = (c % r as u64) as u8;
            c /= r as u64;
        }
        if mono_free(&coloring, edges) {
            found += 1;
            if found == cap {
                break;
            }
        }
    }
    found
}

fn decode_coloring(witness: &str) -> Vec<u8> {
    witness.chars().map(|c| c.to_digit(36).expect("base-36 digit") as u8).collect()
}

fn read_cert(path: &Path) -> Result<Certificate, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Certificate::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn hj_two_two(dir: &Path, certs: &mut Vec<Certificate>) -> Outcome {
    let free_1 = count_free(2, 2, &naive_lines(2, 1), u64::MAX);
    let free_2 = count_free(4, 2, &naive_lines(2, 2), u64::MAX);
    let free_4 = count_free(16, 2, &naive_lines(2, 4), u64::MAX);
    ensure(free_1 == 2 && free_2 == 0 && free_4 == 0, || {
        format!("naive line-free counts {free_1}, {free_2}, {free_4}")
    })?;

    let out_dir = dir.join("hj22");
    let (out, time) = hjkit(&["hj", "-n", "2", "-r", "2", "--max-N", "4", "--out-dir", out_dir.to_str().unwrap()]);
    let text = stdout(&out);
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    ensure(text.contains("N=1: SAT") && text.contains("N=2: UNSAT"), || text.clone())?;
    ensure(text.lines().any(|l| l == "HJ(2,2) = 2"), || text.clone())?;
    ensure(!text.contains("N=3"), || "searched past the first UNSAT".into())?;
    ensure(time < Duration::from_secs(1), || format!("took {time:?}"))?;
    let cert = read_cert(&out_dir.join("hj-n2-r2-N1.json"))?;
    ensure(mono_free(&decode_coloring(&cert.witness), &naive_lines(2, 1)), || "N=1 coloring has a line".into())?;
    certs.push(cert);
    Ok(format!("HJ(2,2) = 2 in {} ms; brute force: 2 line-free colorings at N=1, 0 of 2^4 at N=2, 0 of 2^16 at N=4", time.as_millis()))
}

fn w_three_two(dir: &Path, certs: &mut Vec<Certificate>) -> Outcome {
    let free_8 = count_free(8, 2, &naive_aps(3, 8), u64::MAX);
    let free_9 = count_free(9, 2, &naive_aps(3, 9), u64::MAX);
    ensure(free_8 > 0 && free_9 == 0, || format!("naive 3-AP-free counts {free_8}, {free_9}"))?;

    let out_dir = dir.join("w32");
    let (out, time) = hjkit(&["vdw", "-k", "3", "-r", "2", "--max-M", "16", "--out-dir", out_dir.to_str().unwrap()]);
    let text = stdout(&out);
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    ensure(text.lines().any(|l| l == "W(3,2) = 9"), || text.clone())?;
    ensure(time < Duration::from_secs(1), || format!("took {time:?}"))?;
    for m in 1..=8 {
        let cert = read_cert(&out_dir.join(format!("vdw-k3-r2-M{m}.json")))?;
        ensure(mono_free(&decode_coloring(&cert.witness), &naive_aps(3, m)), || format!("M={m} coloring has a 3-AP"))?;
        certs.push(cert);
    }
    Ok(format!("W(3,2) = 9 in {} ms; brute force: {free_8} of 2^8 colorings of [1..8] avoid 3-APs, 0 of 2^9 of [1..9]", time.as_millis()))
}

fn reduction(certs: &mut Vec<Certificate>) -> Outcome {
    let mut passed = 0;
    let total = 1u32 << 11;
    for mask in 0..total {
        let pattern: Vec<u8> = (0..11).map(|i| (mask >> i & 1) as u8).collect();
        let spec = format!("apres:2:{}", pattern.iter().map(u8::to_string).collect::<String>());
        let coloring = Coloring::parse(&spec).map_err(|e| e.to_string())?;
        let (outcome, ap) = vdw_via_hj(3, &coloring, 5).map_err(|e| format!("{spec}: {e}"))?;
        let WitnessOutcome::Found(cert) = outcome else {
            return Err(format!("{spec}: no witness up to length 5"));
        };
        let images: Vec<String> = ['0', '1', '2'].iter().map(|&a| cert.witness.replace('x', &a.to_string())).collect();
        let sums: Vec<usize> = images
            .iter()
            .map(|w| w.chars().map(|c| c.to_digit(10).unwrap() as usize).sum())
            .collect();
        let is_ap = sums[1] > sums[0] && sums[1] - sums[0] == sums[2] - sums[1];
        let mono = sums.iter().all(|&s| pattern[s] == pattern[sums[0]]);
        let reported = ap.map(|p| p.terms()) == Some(sums.iter().map(|&s| s as u64).collect());
        if cert.images == images && is_ap && mono && reported {
            passed += 1;
        }
        certs.push(*cert);
    }
    ensure(passed == total, || format!("{passed}/{total} colorings passed"))?;
    Ok(format!("{passed}/{total} apres:2 colorings of 0..=10 yield monochromatic 3-APs"))
}

fn prop_suite() -> Outcome {
    let start = Instant::now();
    let corpus = transformation_corpus(6, 50, 0);
    ensure(corpus.len() == 50, || format!("corpus has {} entries", corpus.len()))?;
    ensure(corpus.iter().all(|e| e.semigroup.order() <= 6), || "order above 6".into())?;
    let mut cases = 0;
    for entry in &corpus {
        let sg = std::sync::Arc::new(entry.semigroup.clone());
        for hom in endomorphisms(&sg) {
            for v in sg.elements() {
                for k in [2, 3] {
                    let verdict = check_prop_tensor(&sg, &sg, &hom, k, PrincipalUltrafilter::new(sg.order(), v))
                        .map_err(|e| e.to_string())?;
                    ensure(verdict.passed(), || format!("{:?}, f = {hom:?}, v = {v}, k = {k}", entry.semigroup))?;
                    cases += 1;
                }
            }
        }
    }
    for k in ["2", "3"] {
        let (out, _) = hjkit(&["ultra", "check-prop", "--corpus-order", "6", "--seed", "0", "--k", k]);
        ensure(out.status.code() == Some(0), || stdout(&out))?;
    }
    let time = start.elapsed();
    ensure(time < Duration::from_secs(60), || format!("took {time:?}"))?;
    Ok(format!("{cases} (homomorphism, V, k) cases over 50 semigroups, 0 counterexamples, {} ms", time.as_millis()))
}

fn lemma_suite() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for m in 1..=3 {
        let fam = flag_family(m);
        let n = fam.semigroup().order();
        let t: Vec<usize> = fam.members().iter().collect();
        let ideal: Vec<usize> = fam.ideal().iter().collect();
        for r in [2u8, 3] {
            let report = check_lemma2_equivalence(&fam, r as usize).map_err(|e| e.to_string())?;
            ensure(report.statement_a && report.statement_b() && report.consistent(), || {
                format!("m={m}, r={r}: {report:?}")
            })?;
            // every coloring of T has a witness in R
            let mut coloring = vec![0u8; n];
            for code in 0..(r as u64).pow(t.len() as u32) {
                let mut c = code;
                for &x in &t {
                    coloring[x] = (c % r as u64) as u8;
                    c /= r as u64;
                }
                let witnessed = ideal.iter().any(|v| {
                    let im = fam.images(v);
                    im.iter().all(|&y| coloring[y] == coloring[im[0]])
                });
                ensure(witnessed, || format!("m={m}, r={r}: coloring {coloring:?} has no witness"))?;
            }
            runs += 1;
        }
        let sets = SubsetQuery::all_subsets(t.len())
            .map(|a| build_agreement_set(&fam, &SubsetQuery::from_indices(n, a.iter().map(|i| t[i]))))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        ensure(check_fip(&sets).map_err(|e| e.to_string())?.passed(), || format!("m={m}: FIP fails"))?;
        let common = (0..n).filter(|&v| sets.iter().all(|s| s.contains(v))).count();
        ensure(common > 0, || format!("m={m}: agreement sets have empty intersection"))?;
    }
    let time = start.elapsed();
    ensure(time < Duration::from_secs(10), || format!("took {time:?}"))?;
    Ok(format!("{runs} (m, r) runs: (a) and (b) true and equivalent, FIP holds, {} ms", time.as_millis()))
}

fn differential() -> Outcome {
    let pruned = SearchConfig::default();
    let plain = SearchConfig {
        symmetry: SymmetrySpec::NONE,
        ..SearchConfig::default()
    };
    let sat = |o: &SolveOutcome| matches!(o, SolveOutcome::Sat(_));
    let mut compared = 0;
    for (n, max_len) in [(2u8, 4usize), (3, 2), (4, 2)] {
        for len in 1..=max_len {
            let lines = naive_lines(n as usize, len);
            for r in 1..=3u8 {
                let a = hj_check(n, r, len, &pruned).map_err(|e| e.to_string())?;
                let b = hj_check(n, r, len, &plain).map_err(|e| e.to_string())?;
                let naive = count_free((n as usize).pow(len as u32), r, &lines, 1) > 0;
                ensure(sat(&a.outcome) == sat(&b.outcome) && sat(&a.outcome) == naive, || {
                    format!("hj n={n} r={r} N={len}: pruned {:?}, unpruned {:?}, naive {naive}", a.outcome, b.outcome)
                })?;
                for o in [&a.outcome, &b.outcome] {
                    if let SolveOutcome::Sat(c) = o {
                        ensure(mono_free(c, &lines), || format!("hj n={n} r={r} N={len}: bad coloring"))?;
                    }
                }
                compared += 1;
            }
        }
    }
    for k in 3..=5 {
        for m in 1..=12 {
            let aps = naive_aps(k, m);
            for r in 1..=3u8 {
                let a = vdw_check(k, r, m, &pruned).map_err(|e| e.to_string())?;
                let naive = count_free(m, r, &aps, 1) > 0;
                ensure(sat(&a.outcome) == naive, || format!("vdw k={k} r={r} M={m}: pruned {:?}, naive {naive}", a.outcome))?;
                if let SolveOutcome::Sat(c) = &a.outcome {
                    ensure(mono_free(c, &aps), || format!("vdw k={k} r={r} M={m}: bad coloring"))?;
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} instances, 0 disagreements"))
}

fn round_trip(dir: &Path, certs: &[Certificate]) -> Outcome {
    let mut mutations = 0;
    for (i, cert) in certs.iter().enumerate() {
        Certificate::verify_text(&cert.to_json()).map_err(|e| format!("certificate {i}: {e}"))?;
        let bytes = cert.witness.as_bytes();
        for pos in 0..bytes.len() {
            for replacement in *b"012xy#" {
                if replacement == bytes[pos] {
                    continue;
                }
                let mut w = bytes.to_vec();
                w[pos] = replacement;
                let mut bad = cert.clone();
                bad.witness = String::from_utf8(w).unwrap();
                ensure(Certificate::verify_text(&bad.to_json()).is_err(), || {
                    format!("certificate {i}: witness {:?} accepted", bad.witness)
                })?;
                mutations += 1;
            }
        }
    }
    // the CLI on files: a sample from each source, plus one mutation each
    let sample: Vec<&Certificate> = certs.iter().take(12).chain(certs.iter().step_by(97)).collect();
    for (i, cert) in sample.iter().enumerate() {
        let good = dir.join(format!("rt-{i}.json"));
        std::fs::write(&good, cert.to_json()).unwrap();
        let (out, _) = hjkit(&["--verify", good.to_str().unwrap()]);
        ensure(out.status.code() == Some(0), || format!("--verify rejected {}: {}", good.display(), stdout(&out)))?;
        let mut bad = (*cert).clone();
        let flipped = if bad.witness.starts_with('0') { "1" } else { "0" };
        bad.witness.replace_range(0..1, flipped);
        let bad_path = dir.join(format!("rt-{i}-bad.json"));
        std::fs::write(&bad_path, bad.to_json()).unwrap();
        let (out, _) = hjkit(&["--verify", bad_path.to_str().unwrap()]);
        ensure(out.status.code() == Some(1), || format!("--verify accepted {}", bad_path.display()))?;
    }
    Ok(format!(
        "{} certificates verify, {mutations} witness mutations rejected, {} checked through --verify",
        certs.len(),
        sample.len()
    ))
}

fn hj_three_two(dir: &Path) -> Outcome {
    let h = line_hypergraph(3, 4).map_err(|e| e.to_string())?;
    ensure(h.vertices() == 81 && h.edges().len() == 175, || "unexpected [3]^4 hypergraph size".into())?;
    ensure(naive_lines(3, 4).len() == 175, || "naive line count".into())?;
    let out_dir = dir.join("hj32");
    let (out, time) = hjkit(&[
        "hj", "-n", "3", "-r", "2", "--max-N", "4", "--max-seconds", "1800", "--out-dir", out_dir.to_str().unwrap(),
    ]);
    let text = stdout(&out);
    let cert = read_cert(&out_dir.join("hj-n3-r2-N3.json"))?;
    let CertInstance::HjColoring { n: 3, length: 3, colors: 2 } = cert.instance else {
        return Err("N=3 certificate describes another instance".into());
    };
    ensure(mono_free(&decode_coloring(&cert.witness), &naive_lines(3, 3)), || "N=3 coloring has a line".into())?;
    cert.verify().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0) && text.lines().any(|l| l == "HJ(3,2) = 4"), || text.clone())?;
    ensure(text.contains("N=4: UNSAT"), || text.clone())?;
    Ok(format!("HJ(3,2) = 4: SAT on 27 cells, UNSAT on 81 vertices / 175 lines, {} ms", time.as_millis()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let mut certs = Vec::new();
    let mut results: Vec<(&str, Outcome, Duration)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        results.push((name, outcome, start.elapsed()));
    };
    run("1 HJ(2,2) = 2", &mut || hj_two_two(dir.path(), &mut certs));
    run("2 W(3,2) = 9", &mut || w_three_two(dir.path(), &mut certs));
    run("3 digit-sum reduction", &mut || reduction(&mut certs));
    run("4 tensor/product identity", &mut prop_suite);
    run("5 witness/agreement equivalence", &mut lemma_suite);
    run("6 differential search", &mut differential);
    let certs = certs;
    run("7 certificate round-trip", &mut || round_trip(dir.path(), &certs));
    run("8 HJ(3,2) = 4", &mut || hj_three_two(dir.path()));

    let mut failed = 0;
    for (name, outcome, time) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name:<34} {detail} [{:.2} s]", time.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<34} {why} [{:.2} s]", time.as_secs_f64());
            }
        }
    }
    println!("{}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
