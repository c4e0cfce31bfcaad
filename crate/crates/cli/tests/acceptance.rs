//! One line per acceptance criterion. Run with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use ekr_words::partitions::{
    coset_cells, family_from_selection, selection_family, selection_from_family,
};
use ekr_words::search::{enumerate_max_rwise, max_family_size, run, SearchSpec};
use ekr_words::verify::{
    certify, claim2_analyze, double_count_check, CertOptions, Claim2Class, Theorem,
};
use ekr_words::{classify_star, intersects, max_bound, Alphabet, Family, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn err(e: ekr_words::Error) -> String {
    e.to_string()
}

fn words(q: u8, m: usize) -> Vec<Word> {
    let a = Alphabet::new(q).unwrap();
    let n = (q as u64).pow(m as u32);
    (0..n).map(|i| Word::from_index(a, m, i)).collect()
}

fn bound_attained() -> Outcome {
    let start = Instant::now();
    let shapes = (1..=5)
        .map(|m| (2, m))
        .chain((1..=3).map(|m| (3, m)))
        .chain((1..=2).map(|m| (4, m)));
    let mut n = 0;
    for (q, m) in shapes {
        let max = max_family_size(q, m, 2).map_err(err)?;
        let bound = (q as u64).pow(m as u32 - 1);
        ensure(max.size == bound, || {
            format!("({q},{m}): max {} != {bound}", max.size)
        })?;
        ensure(
            max.witness.len() as u64 == bound && max.witness.is_intersecting(),
            || format!("({q},{m}): bad witness {}", max.witness),
        )?;
        n += 1;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{n} shapes, max = q^(m-1) with intersecting witnesses"
    ))
}

fn binary_census() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for m in 1..=4 {
        let expected = 1u64 << (1 << (m - 1));
        let by_selection: BTreeSet<Family> = (0..expected)
            .map(|bits| selection_family(m, bits).unwrap())
            .filter(|f| f.is_intersecting())
            .collect();
        let by_search: BTreeSet<Family> = enumerate_max_rwise(2, m, 2)
            .map_err(err)?
            .families
            .into_iter()
            .collect();
        ensure(by_selection.len() as u64 == expected, || {
            format!("m={m}: {} selections", by_selection.len())
        })?;
        ensure(by_selection == by_search, || {
            format!("m={m}: selection and search disagree")
        })?;
        counts.push(expected);
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "counts {counts:?}, selection and transversal sets identical"
    ))
}

fn all_stars(families: &[Family]) -> bool {
    families.iter().all(|f| classify_star(f).is_some())
}

fn three_wise_binary() -> Outcome {
    let mut counts = Vec::new();
    for m in 2..=5 {
        let start = Instant::now();
        let families = enumerate_max_rwise(2, m, 3).map_err(err)?.families;
        if m == 5 {
            within(start, Duration::from_secs(60))?;
        }
        ensure(all_stars(&families), || {
            format!("m={m}: a maximum family is not a star")
        })?;
        ensure(families.len() == 2 * m, || {
            format!("m={m}: {} families, expected {}", families.len(), 2 * m)
        })?;
        counts.push(families.len());
    }
    Ok(format!("counts {counts:?}, all stars"))
}

fn ternary_stars() -> Outcome {
    let mut counts = Vec::new();
    for m in 2..=3 {
        let start = Instant::now();
        let families = enumerate_max_rwise(3, m, 2).map_err(err)?.families;
        if m == 3 {
            within(start, Duration::from_secs(120))?;
        }
        ensure(all_stars(&families), || {
            format!("(3,{m}): a maximum family is not a star")
        })?;
        ensure(families.len() == 3 * m, || {
            format!("(3,{m}): {} families", families.len())
        })?;
        counts.push(families.len());
    }
    Ok(format!("counts {counts:?}, all stars"))
}

fn binary_failure_surfaced() -> Outcome {
    let cert = certify(Theorem::Stars, 2, 3, &CertOptions::default()).map_err(err)?;
    ensure(!cert.all_stars && !cert.conclusion_holds(), || {
        "certificate claims all stars".into()
    })?;
    let even = vec!["000".to_string(), "011".into(), "101".into(), "110".into()];
    let listed = cert.families.as_ref().ok_or("family list missing")?;
    ensure(listed.contains(&even), || {
        "even-weight family not reported".into()
    })?;

    let out = Command::new(env!("CARGO_BIN_EXE_ekr"))
        .args(["verify", "thm2", "-q", "2", "-m", "3"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(1), || {
        format!("exit {:?}", out.status.code())
    })?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(text.contains("nonstar 000,011,101,110"), || {
        "CLI omits the even-weight family".into()
    })?;
    let non_stars = listed
        .iter()
        .filter(|ws| {
            let refs: Vec<&str> = ws.iter().map(String::as_str).collect();
            classify_star(&Family::from_strs(2, 3, &refs).unwrap()).is_none()
        })
        .count();
    Ok(format!(
        "{} maxima, {non_stars} non-stars incl. even-weight, exit 1",
        listed.len()
    ))
}

fn double_count() -> Outcome {
    let mut n = 0;
    let batches = (2..=5).map(|m| (2, m, 3)).chain([(3, 2, 2), (3, 3, 2)]);
    for (q, m, r) in batches {
        let q_pow_m = (q as u64).pow(m as u32);
        for f in enumerate_max_rwise(q, m, r).map_err(err)?.families {
            let report = double_count_check(&f).map_err(err)?;
            let sum = report.metrics["double_sum"];
            ensure(
                report.passed() && sum == q as u64 * f.len() as u64 && sum == q_pow_m,
                || format!("({q},{m}) {f}: double sum {sum}, q^m = {q_pow_m}"),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} families, double sum = q|T| = q^m"))
}

fn coset_dichotomy() -> Outcome {
    let mut cases = 0;
    for m in 2..=3 {
        for f in enumerate_max_rwise(3, m, 2).map_err(err)?.families {
            for delta in words(3, m - 1) {
                let case = claim2_analyze(&f, &delta).map_err(err)?;
                ensure(case.sum == 3, || {
                    format!("{f} at {delta}: sum {}", case.sum)
                })?;
                let shaped = matches!(
                    case.class,
                    Claim2Class::UniqueContainment { .. } | Claim2Class::CommonSingleton { .. }
                );
                ensure(shaped, || format!("{f} at {delta}: {:?}", case.class))?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} (family, delta) cases, sum = q, never deficient"
    ))
}

fn complement_characterization() -> Result<(), String> {
    for m in 1..=4 {
        let all = words(2, m);
        for x in &all {
            for y in &all {
                let disjoint = !intersects(x, y).unwrap();
                ensure(disjoint == (*y == x.complement()), || format!("{x} vs {y}"))?;
            }
        }
    }
    Ok(())
}

fn coset_partition() -> Result<usize, String> {
    let mut shapes = 0;
    for q in 2u8..=16 {
        let mut n = 1;
        while (q as u64).pow(n as u32) <= 1 << 12 {
            let cells = coset_cells(q, n).map_err(err)?;
            ensure(cells.len() as u64 == (q as u64).pow(n as u32 - 1), || {
                format!("({q},{n}) cell count")
            })?;
            let mut seen = vec![false; (q as usize).pow(n as u32)];
            for cell in &cells {
                ensure(
                    cell.base().at(1) == 0 && cell.members().len() == q as usize,
                    || format!("({q},{n}) cell shape"),
                )?;
                for (c, w) in cell.members().iter().enumerate() {
                    ensure(*w == cell.base().shifted(c as u8), || {
                        format!("({q},{n}) shift order")
                    })?;
                    let slot = &mut seen[w.index() as usize];
                    ensure(!*slot, || format!("({q},{n}) {w} in two cells"))?;
                    *slot = true;
                }
            }
            ensure(seen.iter().all(|&s| s), || {
                format!("({q},{n}) cells miss a word")
            })?;
            shapes += 1;
            n += 1;
        }
    }
    Ok(shapes)
}

fn selection_bijection() -> Result<(), String> {
    for m in 1..=4 {
        for bits in 0..1u64 << (1 << (m - 1)) {
            let f = selection_family(m, bits).map_err(err)?;
            let choice = selection_from_family(&f).map_err(err)?;
            ensure(family_from_selection(m, &choice).map_err(err)? == f, || {
                format!("m={m} bits={bits:b}")
            })?;
        }
    }
    Ok(())
}

fn worker_determinism() -> Result<(), String> {
    for (q, m, r) in [(2, 4, 2), (2, 5, 3), (3, 3, 2)] {
        let base = run(&SearchSpec::new(q, m, r).map_err(err)?.workers(1)).map_err(err)?;
        for w in [2, 4, 8] {
            let other = run(&SearchSpec::new(q, m, r).map_err(err)?.workers(w)).map_err(err)?;
            ensure(other == base, || {
                format!("({q},{m},{r}) differs with {w} workers")
            })?;
        }
    }
    let cli = |w: &str| {
        Command::new(env!("CARGO_BIN_EXE_ekr"))
            .args(["enumerate", "-q", "2", "-m", "4", "--workers", w])
            .output()
            .map(|o| o.stdout)
            .map_err(|e| e.to_string())
    };
    let one = cli("1")?;
    for w in ["3", "6"] {
        ensure(cli(w)? == one, || {
            format!("CLI output differs with {w} workers")
        })?;
    }
    Ok(())
}

/// Keeps every `r`-wise intersecting subset of the universe of size `q^(m-1)`.
fn naive_maxima(q: u8, m: usize, r: usize) -> (BTreeSet<Family>, bool) {
    let all = words(q, m);
    let target = max_bound(q, m).unwrap() as u32;
    let mut found = BTreeSet::new();
    let mut larger = false;
    for mask in 0u32..1 << all.len() {
        let size = mask.count_ones();
        if size < target {
            continue;
        }
        let members = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, w)| w.clone());
        let f = Family::new(Alphabet::new(q).unwrap(), m, members).unwrap();
        if f.is_r_wise_intersecting(r).unwrap() {
            if size == target {
                found.insert(f);
            } else {
                larger = true;
            }
        }
    }
    (found, larger)
}

fn oracle_equivalence() -> Result<usize, String> {
    let mut shapes = 0;
    for (q, m) in [
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (4, 1),
        (4, 2),
    ] {
        for r in 2..=3 {
            let (naive, larger) = naive_maxima(q, m, r);
            ensure(!larger, || {
                format!("({q},{m},{r}): naive filter found a family above q^(m-1)")
            })?;
            let searched: BTreeSet<Family> = enumerate_max_rwise(q, m, r)
                .map_err(err)?
                .families
                .into_iter()
                .collect();
            ensure(naive == searched, || {
                format!(
                    "({q},{m},{r}): naive {} vs search {}",
                    naive.len(),
                    searched.len()
                )
            })?;
            shapes += 1;
        }
    }
    Ok(shapes)
}

fn property_suites() -> Outcome {
    complement_characterization().map_err(|e| format!("complement: {e}"))?;
    let cells = coset_partition().map_err(|e| format!("coset cells: {e}"))?;
    selection_bijection().map_err(|e| format!("selection: {e}"))?;
    worker_determinism().map_err(|e| format!("workers: {e}"))?;
    let oracles = oracle_equivalence().map_err(|e| format!("oracle: {e}"))?;
    Ok(format!(
        "complement m<=4, {cells} coset shapes, selection m<=4, workers 1 vs N, {oracles} oracle cases"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("bound and attainment", bound_attained),
        ("binary census", binary_census),
        ("3-wise binary stars", three_wise_binary),
        ("q>=3 stars", ternary_stars),
        ("q=2 failure surfaced", binary_failure_surfaced),
        ("double count", double_count),
        ("coset dichotomy", coset_dichotomy),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail} ({:?})", i + 1, start.elapsed()),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
