use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use neutrep_core::criteria::{
    check_prime, neutrality_report, verify_certificate, Certificate, PrimeEntry, VerdictKind,
};
use neutrep_core::geometry::{
    curve_check, marked_check, CurveInstance, GeometryReport, MarkedInstance,
};
use neutrep_core::search::search_cyclic;
use neutrep_core::{
    rep_from_input, Character, Error, InputDocument, NeutralityReport, Overall, Representation,
    DEFAULT_CAP,
};

const INCONCLUSIVE: &str = "criteria inconclusive — NOT a proof of non-neutrality";

#[derive(Parser)]
#[command(
    name = "neutrep",
    version,
    about = "Neutrality criteria for representations of diagonalizable group schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Maximum number of automorphisms to enumerate
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Print machine-readable JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the blended decomposition (orbits of the multiplicity-preserving automorphisms)
    Blend {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the neutrality criteria
    Check {
        file: PathBuf,
        /// Only check this prime
        #[arg(long)]
        prime: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Field-of-moduli check for a curve with cyclic automorphism group
    Curve {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        genus: u64,
        /// Genus of X/H_p for each prime p | n, as p=g
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        quotient_genus: Vec<(u64, u64)>,
        #[arg(long)]
        json: bool,
    },
    /// Field-of-moduli check for a pointed variety with cyclic automorphism group
    Marked {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        dim: u64,
        /// Dimension of the H_p-fixed locus at the point for each prime p | n, as p=d
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        fixed_dim: Vec<(u64, u64)>,
        #[arg(long)]
        json: bool,
    },
    /// Replay certificates against a representation
    Verify { file: PathBuf, certificate: PathBuf },
    /// Run the criteria on every representation of Z/n up to a dimension
    Search {
        #[arg(long)]
        cyclic: u64,
        #[arg(long)]
        max_dim: u64,
        /// Only faithful representations
        #[arg(long)]
        faithful: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (p, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected p=value, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(p)?, parse(v)?))
}

fn to_map(pairs: &[(u64, u64)]) -> anyhow::Result<BTreeMap<u64, u64>> {
    let mut map = BTreeMap::new();
    for &(p, v) in pairs {
        if map.insert(p, v).is_some() {
            bail!("prime {p} given twice");
        }
    }
    Ok(map)
}

fn load(file: &Path) -> anyhow::Result<Representation> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let doc = InputDocument::from_json(&text)?;
    Ok(rep_from_input(&doc)?)
}

fn show(x: &Character) -> String {
    let coords: Vec<String> = x.coords().iter().map(u64::to_string).collect();
    format!("({})", coords.join(", "))
}

fn describe_group(v: &Representation) -> String {
    let f = v.group().invariant_factors();
    if f.is_empty() {
        "trivial".to_string()
    } else {
        f.iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The doubled sign character of Z/2, whose quotient singularity is known not
/// to be an R-singularity.
fn is_doubled_sign(v: &Representation) -> bool {
    v.group().invariant_factors() == [2]
        && v.multiplicities().len() == 1
        && v.multiplicities()
            .iter()
            .all(|(x, &m)| x.coords() == [1] && m == 2)
}

fn print_entry(e: &PrimeEntry) {
    match e.verdict {
        VerdictKind::Certified => {
            let strategy = e.strategy.map(|s| s.to_string()).unwrap_or_default();
            println!("p = {}: CERTIFIED by {strategy}", e.prime);
            let witness = serde_json::to_string(&e.witness).expect("witness serializes");
            println!("  witness: {witness}");
        }
        VerdictKind::Unknown => {
            println!("p = {}: UNKNOWN ({INCONCLUSIVE})", e.prime);
            for r in &e.reasons {
                println!("  - {r}");
            }
        }
    }
    for d in &e.diagnostics {
        println!("  note: {d}");
    }
}

fn print_report(v: &Representation, r: &NeutralityReport) {
    println!("group: {}", describe_group(v));
    println!("dim: {}", r.dim);
    println!("faithful: {}", r.flags.faithful);
    let pseudo: Vec<String> = r
        .flags
        .pseudoreflections
        .iter()
        .map(|g| format!("{:?}", g.0))
        .collect();
    println!("pseudoreflections: [{}]", pseudo.join(", "));
    for e in &r.primes {
        print_entry(e);
    }
    match r.overall {
        Overall::Neutral => println!("overall: NEUTRAL"),
        Overall::Unknown if is_doubled_sign(v) => println!(
            "overall: UNKNOWN ({INCONCLUSIVE}; note: this instance is known not to be neutral, its quotient singularity is not an R-singularity)"
        ),
        Overall::Unknown => println!("overall: UNKNOWN ({INCONCLUSIVE})"),
    }
}

fn run_check(file: &Path, prime: Option<u64>, common: &Common) -> anyhow::Result<()> {
    let v = load(file)?;
    if let Some(p) = prime {
        let entry = PrimeEntry::new(p, check_prime(&v, p, common.cap)?);
        if common.json {
            println!("{}", serde_json::to_string_pretty(&entry)?);
        } else {
            print_entry(&entry);
        }
        return Ok(());
    }
    let r = neutrality_report(&v, common.cap)?;
    if common.json {
        println!("{}", r.to_json());
    } else {
        print_report(&v, &r);
    }
    Ok(())
}

fn run_blend(file: &Path, common: &Common) -> anyhow::Result<()> {
    let v = load(file)?;
    let b = v.blended_decomposition(common.cap)?;
    if common.json {
        println!("{}", serde_json::to_string_pretty(&b.components)?);
        return Ok(());
    }
    println!("group: {}", describe_group(&v));
    println!("orbits: {}", b.components.len());
    for (i, c) in b.components.iter().enumerate() {
        let chars: Vec<String> = c.characters.iter().map(show).collect();
        println!(
            "orbit {}: size {}, multiplicity {}, chi_omega = {}: {}",
            i + 1,
            c.size(),
            c.multiplicity,
            show(&c.determinant_character),
            chars.join(" ")
        );
    }
    Ok(())
}

fn print_geometry(r: &GeometryReport, json: bool) -> anyhow::Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(r)?);
        return Ok(());
    }
    for d in &r.primes {
        let rel = if d.divisible {
            "divides"
        } else {
            "does not divide"
        };
        println!("p = {}: {} {rel} {}", d.prime, d.prime, d.difference);
    }
    for a in &r.assumptions {
        println!("assumes: {a}");
    }
    if let Some(note) = &r.note {
        println!("note: {}", note.summary);
    }
    let verdict = serde_json::to_value(r.verdict)?;
    println!("verdict: {}", verdict.as_str().unwrap_or_default());
    Ok(())
}

/// Accepts a bare certificate, a per-prime entry or a full report.
fn read_certificates(file: &Path) -> anyhow::Result<Vec<Certificate>> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let certs: Vec<Certificate> = if let Ok(r) = serde_json::from_str::<NeutralityReport>(&text) {
        r.certificates().collect()
    } else if let Ok(e) = serde_json::from_str::<PrimeEntry>(&text) {
        e.certificate().into_iter().collect()
    } else {
        let c = serde_json::from_str::<Certificate>(&text)
            .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        vec![c]
    };
    if certs.is_empty() {
        return Err(Error::MalformedCertificate("no certificate in file".into()).into());
    }
    Ok(certs)
}

fn run_verify(file: &Path, certificate: &Path) -> anyhow::Result<()> {
    let v = load(file)?;
    for c in read_certificates(certificate)? {
        let status = if verify_certificate(&v, &c)? {
            "VALID"
        } else {
            "INVALID"
        };
        println!("p = {}: {} certificate {status}", c.prime, c.strategy);
    }
    Ok(())
}

fn run_search(n: u64, max_dim: u64, faithful: bool, common: &Common) -> anyhow::Result<()> {
    if n < 2 {
        bail!("--cyclic must be at least 2, got {n}");
    }
    let s = search_cyclic(n, max_dim, faithful, common.cap)?;
    if common.json {
        println!("{}", serde_json::to_string_pretty(&s)?);
        return Ok(());
    }
    let show_map = |m: &[(u64, u64)]| {
        let parts: Vec<String> = m.iter().map(|(c, k)| format!("{c}:{k}")).collect();
        format!("{{{}}}", parts.join(", "))
    };
    for e in &s.entries {
        let overall = serde_json::to_value(e.report.overall)?;
        let strategies: Vec<String> = e
            .report
            .primes
            .iter()
            .map(|p| match p.strategy {
                Some(st) => format!("{}:{st}", p.prime),
                None => format!("{}:-", p.prime),
            })
            .collect();
        println!(
            "{:>5}  {:<24} {:<8} {}",
            e.index,
            show_map(&e.multiplicities),
            overall.as_str().unwrap_or_default(),
            strategies.join(" ")
        );
    }
    println!(
        "total: {}, neutral: {}, unknown: {}",
        s.entries.len(),
        s.neutral,
        s.unknown
    );
    if let Some(e) = s.first_with(Overall::Neutral) {
        println!("first neutral: {}", show_map(&e.multiplicities));
        for c in e.report.certificates() {
            println!(
                "  p = {}: {} {}",
                c.prime,
                c.strategy,
                serde_json::to_string(&c.witness)?
            );
        }
    }
    if let Some(e) = s.first_with(Overall::Unknown) {
        println!(
            "first unknown: {} ({INCONCLUSIVE})",
            show_map(&e.multiplicities)
        );
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Blend { file, common } => run_blend(&file, &common),
        Command::Check {
            file,
            prime,
            common,
        } => run_check(&file, prime, &common),
        Command::Curve {
            n,
            genus,
            quotient_genus,
            json,
        } => {
            let c = CurveInstance {
                n,
                genus,
                quotient_genus: to_map(&quotient_genus)?,
            };
            print_geometry(&curve_check(&c)?, json)
        }
        Command::Marked {
            n,
            dim,
            fixed_dim,
            json,
        } => {
            let m = MarkedInstance {
                n,
                dim,
                fixed_dim: to_map(&fixed_dim)?,
            };
            print_geometry(&marked_check(&m)?, json)
        }
        Command::Verify { file, certificate } => run_verify(&file, &certificate),
        Command::Search {
            cyclic,
            max_dim,
            faithful,
            common,
        } => run_search(cyclic, max_dim, faithful, &common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Error>() {
                Some(e) if e.is_cap() => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
