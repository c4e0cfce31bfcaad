use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use ekr_words::partitions::prefix_counts;
use ekr_words::search::{self, feasibility_table, feasible, Limits, Mode, SearchSpec};
use ekr_words::verify::{
    certify, check_lemma_bound, claim1_check, claim2_check, double_count_check, CertOptions,
    CheckReport, Theorem,
};
use ekr_words::{classify_star, count_stars, max_bound, star, Error, Family, StarSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds = 0,
    Fails = 1,
    Budget = 3,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted { .. } => 3,
        _ => 2,
    }
}

type Outcome = Result<Status, Error>;

pub fn bound(q: u8, m: usize) -> Outcome {
    let b = max_bound(q, m)?;
    println!("bound={b} stars={}", count_stars(q, m));
    Ok(Status::Holds)
}

#[derive(Serialize)]
struct CheckOutput {
    q: u8,
    m: usize,
    size: usize,
    r: usize,
    r_wise_intersecting: bool,
    violation: Option<Vec<String>>,
    star: Option<StarSpec>,
    prefix_counts: Vec<(String, usize)>,
    reports: Vec<CheckReport>,
}

fn digits(letters: &[u8]) -> String {
    if letters.is_empty() {
        "()".into()
    } else {
        letters
            .iter()
            .map(|l| char::from_digit(*l as u32, 36).unwrap_or('?'))
            .collect()
    }
}

/// Prefix tables are printed while they stay this small.
const PREFIX_TABLE_LIMIT: u64 = 64;

pub fn check(path: &Path, r: usize, json: bool) -> Outcome {
    let text = fs::read_to_string(path)?;
    let family = Family::parse_text(&text)?;
    let (q, m) = (family.q(), family.m());
    let violation = family.r_wise_violation(r)?;
    let spec = classify_star(&family);

    let mut prefix_rows = Vec::new();
    for k in 1..m {
        if (q as u64)
            .checked_pow(k as u32)
            .is_none_or(|n| n > PREFIX_TABLE_LIMIT)
        {
            break;
        }
        for (delta, n) in prefix_counts(&family, k)? {
            prefix_rows.push((digits(&delta), n));
        }
    }

    let mut reports = Vec::new();
    if family.is_intersecting() {
        reports.push(check_lemma_bound(&family)?);
    }
    if q == 2 {
        reports.push(claim1_check(&family)?);
    }
    if m >= 2 {
        reports.push(double_count_check(&family)?);
    }
    if q >= 3 && m >= 2 {
        reports.push(claim2_check(&family)?);
    }

    let output = CheckOutput {
        q,
        m,
        size: family.len(),
        r,
        r_wise_intersecting: violation.is_none(),
        violation: violation
            .as_ref()
            .map(|v| v.iter().map(|w| w.to_string()).collect()),
        star: spec,
        prefix_counts: prefix_rows,
        reports,
    };

    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&output).expect("report serializes")
        );
    } else {
        print!("{}", render_check(&output));
    }
    Ok(if output.r_wise_intersecting {
        Status::Holds
    } else {
        Status::Fails
    })
}

fn render_check(out: &CheckOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family q={} m={} size={}", out.q, out.m, out.size);
    let label = if out.r == 2 {
        "intersecting".to_string()
    } else {
        format!("intersecting(r={})", out.r)
    };
    let star = out.star.map_or("none".to_string(), |sp| sp.to_string());
    let _ = writeln!(s, "{label}={} star={star}", out.r_wise_intersecting);
    if let Some(v) = &out.violation {
        let _ = writeln!(s, "witness={}", v.join(","));
    }
    for (delta, n) in &out.prefix_counts {
        let _ = writeln!(s, "prefix {delta}: {n}");
    }
    for report in &out.reports {
        let metrics: Vec<String> = report
            .metrics
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(
            s,
            "{} passed={} {}",
            report.name,
            report.passed(),
            metrics.join(" ")
        );
        if let Some(w) = report.first_violation() {
            let _ = writeln!(s, "  violation: {}", w.detail);
        }
    }
    s
}

pub struct EnumerateArgs {
    pub q: u8,
    pub m: usize,
    pub r: usize,
    pub count_only: bool,
    pub first_nonstar: bool,
    pub out: Option<PathBuf>,
    pub workers: usize,
    pub limits: Limits,
    pub verbose: bool,
}

fn require_feasible(q: u8, m: usize) -> Result<(), Error> {
    if feasible(q, m) {
        Ok(())
    } else {
        Err(Error::Infeasible(format!(
            "({q},{m}) is too large\n{}",
            feasibility_table()
        )))
    }
}

pub fn enumerate(args: EnumerateArgs) -> Outcome {
    require_feasible(args.q, args.m)?;
    let mode = if args.count_only {
        Mode::CountOnly
    } else if args.first_nonstar {
        Mode::FirstNonstar
    } else {
        Mode::EnumerateAll
    };
    let spec = SearchSpec::new(args.q, args.m, args.r)?
        .mode(mode)
        .workers(args.workers)
        .limits(args.limits);
    let start = Instant::now();
    let result = search::run(&spec)?;
    if args.verbose {
        eprintln!(
            "searched {} nodes in {:?}",
            result.nodes_explored,
            start.elapsed()
        );
    }

    let mut lines = String::new();
    let mut stars = 0;
    for f in &result.families {
        let spec = classify_star(f);
        stars += spec.is_some() as u64;
        let tag = spec.map_or("none".to_string(), |s| s.to_string());
        let _ = writeln!(lines, "star={tag} {}", f.to_strings().join(","));
    }
    match &args.out {
        Some(path) => fs::write(path, &lines)?,
        None => print!("{lines}"),
    }

    let summary = format!(
        "nodes={} pruned={} exhausted={}",
        result.nodes_explored, result.pruned, result.exhausted
    );
    match mode {
        Mode::FirstNonstar => {
            let found = result
                .families
                .first()
                .map_or("none".to_string(), |f| f.to_string());
            println!("nonstar={found} {summary}");
        }
        Mode::CountOnly => println!("count={} {summary}", result.count),
        Mode::EnumerateAll => println!("count={} stars={stars} {summary}", result.count),
    }
    std::io::stdout().flush()?;
    Ok(if result.exhausted {
        Status::Holds
    } else {
        Status::Budget
    })
}

pub struct VerifyArgs {
    pub theorem: Theorem,
    pub q: Option<u8>,
    pub m: usize,
    pub cert: Option<PathBuf>,
    pub workers: usize,
    pub limits: Limits,
    pub verbose: bool,
}

pub fn verify(args: VerifyArgs) -> Outcome {
    let q = match (args.theorem, args.q) {
        (_, Some(q)) => q,
        (Theorem::BinaryThreeWise | Theorem::BinaryCount, None) => 2,
        (t, None) => {
            return Err(Error::InvalidInput(format!("{t} needs -q")));
        }
    };
    let opts = CertOptions {
        workers: args.workers,
        limits: args.limits,
    };
    let cert = certify(args.theorem, q, args.m, &opts)?;
    if args.verbose {
        eprintln!("certified in {} ms", cert.elapsed_ms);
    }
    println!(
        "theorem={} q={} m={} bound={} extremal_size={} families={} stars_expected={} all_stars={}",
        cert.theorem,
        cert.q,
        cert.m,
        cert.bound,
        cert.extremal_size,
        cert.num_extremal_families,
        cert.num_stars_expected,
        cert.all_stars
    );
    for c in &cert.checks {
        let metrics: Vec<String> = c.metrics.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("check {} passed={} {}", c.name, c.passed, metrics.join(" "));
        if let Some(v) = &c.first_violation {
            println!("  violation: {v}");
        }
    }
    print_nonstars(&cert.families, q, args.m)?;
    let holds = cert.conclusion_holds();
    println!("conclusion={}", if holds { "holds" } else { "fails" });
    if let Some(path) = &args.cert {
        fs::write(path, cert.to_document())?;
    }
    Ok(if holds { Status::Holds } else { Status::Fails })
}

/// Non-star maxima listed after a failing star check.
const NONSTAR_LIST_LIMIT: usize = 32;

fn print_nonstars(families: &Option<Vec<Vec<String>>>, q: u8, m: usize) -> Result<(), Error> {
    let Some(families) = families else {
        return Ok(());
    };
    let mut shown = 0;
    let mut hidden = 0;
    for words in families {
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let family = Family::from_strs(q, m, &refs)?;
        if classify_star(&family).is_some() {
            continue;
        }
        if shown < NONSTAR_LIST_LIMIT {
            println!("nonstar {}", words.join(","));
            shown += 1;
        } else {
            hidden += 1;
        }
    }
    if hidden > 0 {
        println!("nonstar ... {hidden} more");
    }
    Ok(())
}

pub fn stars(q: u8, m: usize, out_dir: &Path) -> Outcome {
    fs::create_dir_all(out_dir)?;
    for spec in StarSpec::all(q, m) {
        let family = star(q, m, spec)?;
        let path = out_dir.join(format!("star_p{}_l{}.txt", spec.position, spec.letter));
        fs::write(&path, family.to_text())?;
        println!("{}", path.display());
    }
    Ok(Status::Holds)
}
