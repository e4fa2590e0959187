//! Command-line front end for the cotor engine.
//!
//! Complexes and modules travel as JSON files (see `cotor::io` for the
//! shapes). Subcommands either answer a question about one input, compare
//! two, or drive the self-verification suites. Exit codes are part of the
//! contract:
//!
//!   0  command ran and every check passed
//!   1  command ran and a check failed (not exact, not a member, ...)
//!   2  invalid mathematical input (unparsable file, broken differential)
//!   3  ring mismatch between inputs, or against --ring
//!   4  usage error

use clap::{Parser, Subcommand, ValueEnum};
use cotor::approx::{
    cover_pipeline, envelope_pipeline, et_run_certified, BackwardReport, Claim, EtLogEntry,
    EtStatus, Evidence, ForwardReport, RunCertificate,
};
use cotor::classes::{cogenerating_set, member_class, ClassOracle, ComplexClassId, PairSpec};
use cotor::complex::{ChShortExactSeq, ChainComplex};
use cotor::ext_ch::{perp_witness, Ext1Ch, Ext1Dw};
use cotor::io::{complex_from_json, module_from_json, ring_from_str};
use cotor::module::{Ext1Module, FpModule, InvariantFactors};
use cotor::verify::{
    run_approx_backward, run_approx_forward, run_cogenerators, run_corpus, run_disk_iso, run_et,
    run_ext_oracle, run_homotopy, run_lifting, run_shift_iso, run_snf, run_sphere_iso,
    SuiteOutcome,
};
use cotor::{Error, Ring};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process;

#[derive(Parser)]
#[command(
    name = "cotor",
    version,
    about = "Exact computations with chain complexes of finitely presented modules over Z and Z/n"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print homology, degree by degree
    Homology {
        /// Complex file (JSON)
        file: PathBuf,
        /// Restrict to a single degree
        #[arg(short = 'n', long)]
        degree: Option<i64>,
        /// Require this ring (Z or Zmod:<n>); mismatch exits 3
        #[arg(long)]
        ring: Option<String>,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Decide exactness; exits 1 with the first failing degree otherwise
    Exact {
        /// Complex file (JSON)
        file: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Extension groups at the module, complex, or degreewise-split level
    Ext {
        #[command(subcommand)]
        which: ExtCmd,
    },
    /// Test membership in a complex class
    Member {
        /// Complex file (JSON)
        file: PathBuf,
        /// Class shape: dw / ex / tilde / rel
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Condition on every degree (dw, ex, rel shapes)
        #[arg(long, value_enum, default_value_t = OracleArg::All)]
        degrees: OracleArg,
        /// Condition on every cycle module (tilde, rel shapes)
        #[arg(long, value_enum, default_value_t = OracleArg::All)]
        cycles: OracleArg,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Test orthogonality against the standard cogenerating family
    Perp {
        /// Complex file (JSON)
        file: PathBuf,
        /// Family window as lo:hi (default: the input's support)
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Build approximation rows for a complex, with labeled guarantees
    Approx {
        /// Complex file (JSON)
        file: PathBuf,
        /// cover: rows ending in an exact, projective-degree middle;
        /// envelope: pushout rows starting from an exact subobject
        #[arg(long, value_enum, default_value_t = DirectionArg::Cover)]
        direction: DirectionArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the certified extension process against the standard family
    Filtration {
        /// Complex file (JSON)
        file: PathBuf,
        /// Family window as lo:hi (default: the input's support)
        #[arg(long)]
        window: Option<String>,
        /// Give up after this many accepted steps
        #[arg(long, default_value_t = 16)]
        max_steps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run self-verification suites (exits 1 on any failure)
    Verify {
        /// Suites to run: snf, ext-oracle, shift-iso, disk-iso, sphere-iso,
        /// homotopy, corpus, cogenerators, lifting, approx, et, or all
        #[arg(default_value = "all")]
        suites: Vec<String>,
        /// Case count per suite (each suite has its own default;
        /// ext-oracle is exhaustive and ignores this)
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Generator cap for sampled modules
        #[arg(long, default_value_t = 2)]
        max_gens: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ExtCmd {
    /// Ext^1 of two modules, each a JSON file {"ring", "gens", "rels"}
    Mod {
        source: PathBuf,
        coeff: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Complex-level Ext^1 of two complexes
    Ch {
        source: PathBuf,
        coeff: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Degreewise-split Ext^1 of two complexes
    Dw {
        source: PathBuf,
        coeff: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    /// Degreewise condition only
    Dw,
    /// Exact with a degreewise condition
    Ex,
    /// Exact with a condition on cycles
    Tilde,
    /// Exact with conditions on degrees and cycles
    Rel,
}

impl ClassArg {
    fn id(self) -> ComplexClassId {
        match self {
            ClassArg::Dw => ComplexClassId::Dw,
            ClassArg::Ex => ComplexClassId::Ex,
            ClassArg::Tilde => ComplexClassId::Tilde,
            ClassArg::Rel => ComplexClassId::Rel,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    All,
    Zero,
    Projective,
    Injective,
}

impl OracleArg {
    fn oracle(self) -> ClassOracle {
        match self {
            OracleArg::All => ClassOracle::All,
            OracleArg::Zero => ClassOracle::Zero,
            OracleArg::Projective => ClassOracle::Projective,
            OracleArg::Injective => ClassOracle::Injective,
        }
    }
    fn name(self) -> &'static str {
        match self {
            OracleArg::All => "all",
            OracleArg::Zero => "zero",
            OracleArg::Projective => "projective",
            OracleArg::Injective => "injective",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Cover,
    Envelope,
}

fn main() {
    // Die quietly when a pager closes the pipe instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    process::exit(0);
                }
                _ => {
                    eprint!("{e}");
                    process::exit(4);
                }
            }
        }
    };
    let code = dispatch(cli);
    process::exit(code);
}

/// Unwrap a library result, translating errors to the exit-code contract.
fn must<T>(r: cotor::Result<T>) -> T {
    r.unwrap_or_else(|e| {
        let code = match &e {
            Error::RingMismatch(_) => 3,
            _ => 2,
        };
        eprintln!("error: {e}");
        process::exit(code)
    })
}

fn fail_usage(msg: &str) -> ! {
    eprintln!("usage error: {msg}");
    process::exit(4)
}

/// Parse a --ring flag: Z, Zmod:<n>, or Z/<n>.
fn ring_flag(s: &str) -> Ring {
    if s == "Z" {
        return Ring::Z;
    }
    let body = s
        .strip_prefix("Zmod:")
        .or_else(|| s.strip_prefix("Z/"))
        .unwrap_or_else(|| fail_usage(&format!("--ring {s}: expected Z, Zmod:<n>, or Z/<n>")));
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        fail_usage(&format!("--ring {s}: the modulus must be a positive integer"));
    }
    must(ring_from_str(&format!("Z/{body}")))
}

/// Parse a --window flag: lo:hi with lo <= hi.
fn window_flag(s: &str) -> (i64, i64) {
    let bad = format!("--window {s}: expected lo:hi with integers");
    let Some((a, b)) = s.split_once(':') else {
        fail_usage(&bad)
    };
    let (Ok(lo), Ok(hi)) = (a.trim().parse::<i64>(), b.trim().parse::<i64>()) else {
        fail_usage(&bad)
    };
    if lo > hi {
        fail_usage(&format!("--window {s}: lo must not exceed hi"));
    }
    (lo, hi)
}

fn read_file(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        process::exit(2)
    })
}

fn assert_ring(actual: &Ring, flag: &Option<String>, place: &str) {
    if let Some(s) = flag {
        let want = ring_flag(s);
        if &want != actual {
            eprintln!("error: ring mismatch: {place} is over {actual}, --ring asks for {want}");
            process::exit(3);
        }
    }
}

fn load_complex(path: &Path, ring: &Option<String>) -> ChainComplex {
    let c = must(complex_from_json(&read_file(path)));
    assert_ring(c.ring(), ring, &path.display().to_string());
    c
}

fn load_module(path: &Path, ring: &Option<String>) -> FpModule {
    let m = must(module_from_json(&read_file(path)));
    assert_ring(m.ring(), ring, &path.display().to_string());
    m
}

fn same_ring(a: &Ring, b: &Ring) {
    if a != b {
        eprintln!("error: ring mismatch between the inputs: {a} vs {b}");
        process::exit(3);
    }
}

fn invariants_json(inv: &InvariantFactors) -> Value {
    json!({
        "free_rank": inv.free_rank,
        "torsion": inv.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "name": inv.to_string(),
    })
}

fn support_str(c: &ChainComplex) -> String {
    match c.support() {
        Some((lo, hi)) => format!("{lo}..{hi}"),
        None => "empty".into(),
    }
}

/// One-line shape of a complex: support plus the module in each degree.
fn brief(c: &ChainComplex) -> String {
    match c.support() {
        None => "0".into(),
        Some((lo, hi)) => {
            let mods: Vec<String> = (lo..=hi)
                .map(|n| c.module(n).invariants().to_string())
                .collect();
            format!("[{}] on {lo}..{hi}", mods.join(", "))
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn dispatch(cli: Cli) -> i32 {
    match cli.cmd {
        Cmd::Homology {
            file,
            degree,
            ring,
            json,
        } => cmd_homology(&file, degree, &ring, json),
        Cmd::Exact { file, ring, json } => cmd_exact(&file, &ring, json),
        Cmd::Ext { which } => match which {
            ExtCmd::Mod {
                source,
                coeff,
                ring,
                json,
            } => cmd_ext_mod(&source, &coeff, &ring, json),
            ExtCmd::Ch {
                source,
                coeff,
                ring,
                json,
            } => cmd_ext_complex(&source, &coeff, &ring, json, false),
            ExtCmd::Dw {
                source,
                coeff,
                ring,
                json,
            } => cmd_ext_complex(&source, &coeff, &ring, json, true),
        },
        Cmd::Member {
            file,
            class,
            degrees,
            cycles,
            ring,
            json,
        } => cmd_member(&file, class, degrees, cycles, &ring, json),
        Cmd::Perp {
            file,
            window,
            ring,
            json,
        } => cmd_perp(&file, &window, &ring, json),
        Cmd::Approx {
            file,
            direction,
            seed,
            ring,
            json,
        } => cmd_approx(&file, direction, seed, &ring, json),
        Cmd::Filtration {
            file,
            window,
            max_steps,
            seed,
            ring,
            json,
        } => cmd_filtration(&file, &window, max_steps, seed, &ring, json),
        Cmd::Verify {
            suites,
            trials,
            seed,
            max_gens,
            json,
        } => cmd_verify(&suites, trials, seed, max_gens, json),
    }
}

fn cmd_homology(file: &Path, degree: Option<i64>, ring: &Option<String>, json: bool) -> i32 {
    let c = load_complex(file, ring);
    let degrees: Vec<i64> = match degree {
        Some(n) => vec![n],
        None => match c.support() {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        },
    };
    let groups: Vec<(i64, InvariantFactors)> = degrees
        .iter()
        .map(|&n| (n, must(c.homology(n)).invariants().clone()))
        .collect();
    if json {
        print_json(&json!({
            "ring": c.ring().to_string(),
            "support": c.support().map(|(lo, hi)| vec![lo, hi]),
            "homology": groups
                .iter()
                .map(|(n, inv)| json!({ "degree": n, "group": invariants_json(inv) }))
                .collect::<Vec<_>>(),
        }));
    } else {
        println!("ring {}, support {}", c.ring(), support_str(&c));
        for (n, inv) in &groups {
            println!("H_{n} = {inv}");
        }
        if groups.is_empty() {
            println!("zero complex; homology vanishes everywhere");
        }
    }
    0
}

fn cmd_exact(file: &Path, ring: &Option<String>, json: bool) -> i32 {
    let c = load_complex(file, ring);
    let exact = must(c.is_exact());
    let mut witness: Option<(i64, InvariantFactors)> = None;
    if !exact {
        if let Some((lo, hi)) = c.support() {
            for n in lo..=hi {
                let h = must(c.homology(n));
                if !h.invariants().is_zero() {
                    witness = Some((n, h.invariants().clone()));
                    break;
                }
            }
        }
    }
    if json {
        print_json(&json!({
            "ring": c.ring().to_string(),
            "exact": exact,
            "first_failure": witness
                .as_ref()
                .map(|(n, inv)| json!({ "degree": n, "group": invariants_json(inv) })),
        }));
    } else if exact {
        println!("exact");
    } else if let Some((n, inv)) = &witness {
        println!("not exact: H_{n} = {inv}");
    }
    if exact {
        0
    } else {
        1
    }
}

fn ext_report(label: &str, inv: &InvariantFactors, json: bool) -> i32 {
    if json {
        print_json(&json!({ "level": label, "group": invariants_json(inv) }));
    } else {
        println!("{label} Ext^1 = {inv}");
    }
    0
}

fn cmd_ext_mod(source: &Path, coeff: &Path, ring: &Option<String>, json: bool) -> i32 {
    let a = load_module(source, ring);
    let b = load_module(coeff, ring);
    same_ring(a.ring(), b.ring());
    let ext = must(Ext1Module::compute(&a, &b));
    ext_report("module", ext.module().invariants(), json)
}

fn cmd_ext_complex(
    source: &Path,
    coeff: &Path,
    ring: &Option<String>,
    json: bool,
    degreewise: bool,
) -> i32 {
    let x = load_complex(source, ring);
    let y = load_complex(coeff, ring);
    same_ring(x.ring(), y.ring());
    if degreewise {
        let ext = must(Ext1Dw::compute(&x, &y));
        ext_report("degreewise-split", ext.module().invariants(), json)
    } else {
        let ext = must(Ext1Ch::compute(&x, &y));
        ext_report("complex", ext.module().invariants(), json)
    }
}

fn cmd_member(
    file: &Path,
    class: ClassArg,
    degrees: OracleArg,
    cycles: OracleArg,
    ring: &Option<String>,
    json: bool,
) -> i32 {
    let c = load_complex(file, ring);
    let m = must(member_class(
        &c,
        class.id(),
        &degrees.oracle(),
        &cycles.oracle(),
    ));
    let label = format!(
        "class {:?}(degrees={}, cycles={})",
        class.id(),
        degrees.name(),
        cycles.name()
    )
    .to_lowercase();
    if json {
        print_json(&json!({
            "member": m.member,
            "failure": m.failure.as_ref().map(|f| f.to_string()),
        }));
    } else if m.member {
        println!("{label}: member");
    } else {
        let why = m
            .failure
            .as_ref()
            .map(|f| f.to_string())
            .unwrap_or_default();
        println!("{label}: not a member — {why}");
    }
    if m.member {
        0
    } else {
        1
    }
}

/// The standard cogenerating family over a ring: spheres and disks built
/// from the projective/injective module pairs over the given window.
fn standard_family(ring: &Ring, window: (i64, i64)) -> Vec<ChainComplex> {
    let left = PairSpec::projective_all(ring);
    let right = must(PairSpec::all_injective(ring));
    must(cogenerating_set(&left, &right, window))
}

fn cmd_perp(file: &Path, window: &Option<String>, ring: &Option<String>, json: bool) -> i32 {
    let y = load_complex(file, ring);
    let win = window
        .as_deref()
        .map(window_flag)
        .unwrap_or_else(|| y.support().unwrap_or((0, 0)));
    let family = standard_family(y.ring(), win);
    let witness = must(perp_witness(&y, &family));
    if json {
        print_json(&json!({
            "ring": y.ring().to_string(),
            "window": [win.0, win.1],
            "family_size": family.len(),
            "orthogonal": witness.is_none(),
            "witness": witness,
        }));
    } else {
        println!(
            "family: {} complexes over {}, window {}..{}",
            family.len(),
            y.ring(),
            win.0,
            win.1
        );
        match witness {
            None => println!("orthogonal: every extension by a family member splits"),
            Some(i) => println!(
                "not orthogonal: generator #{i} ({}) admits a non-split extension",
                brief(&family[i])
            ),
        }
    }
    if witness.is_none() {
        0
    } else {
        1
    }
}

fn evidence_str(e: &Evidence) -> String {
    match e {
        Evidence::Checked => "checked".into(),
        Evidence::Generators { family, count } => format!("family {family}, {count} members"),
        Evidence::Sampled { count } => format!("sampled x{count}"),
    }
}

fn print_claims(indent: &str, claims: &[Claim]) {
    for cl in claims {
        let mark = if cl.holds { "ok  " } else { "FAIL" };
        println!("{indent}[{mark}] {} ({})", cl.statement, evidence_str(&cl.evidence));
    }
}

fn claims_json(claims: &[Claim]) -> Value {
    Value::Array(
        claims
            .iter()
            .map(|cl| {
                json!({
                    "statement": cl.statement,
                    "evidence": evidence_str(&cl.evidence),
                    "holds": cl.holds,
                })
            })
            .collect(),
    )
}

fn row_json(label: &str, s: &ChShortExactSeq, claims: Option<&[Claim]>) -> Value {
    let mut v = json!({
        "label": label,
        "sub": brief(s.sub()),
        "middle": brief(s.middle()),
        "quot": brief(s.quot()),
    });
    if let Some(cl) = claims {
        v["claims"] = claims_json(cl);
    }
    v
}

fn print_row(label: &str, s: &ChShortExactSeq, claims: Option<&[Claim]>) {
    println!(
        "{label}: 0 -> {} -> {} -> {} -> 0",
        brief(s.sub()),
        brief(s.middle()),
        brief(s.quot())
    );
    if let Some(cl) = claims {
        print_claims("    ", cl);
    }
}

fn cmd_approx(
    file: &Path,
    direction: DirectionArg,
    seed: u64,
    ring: &Option<String>,
    json: bool,
) -> i32 {
    let c = load_complex(file, ring);
    match direction {
        DirectionArg::Cover => {
            let rep: ForwardReport = must(cover_pipeline(&c, seed));
            if json {
                print_json(&json!({
                    "direction": "cover",
                    "seed": seed,
                    "rows": [
                        row_json("precover", &rep.precover.seq, Some(&rep.precover.claims)),
                        row_json("cover of middle", &rep.cover_of_middle, None),
                        row_json("composite", &rep.first_row, None),
                        row_json("final", &rep.final_row, None),
                    ],
                    "claims": claims_json(&rep.claims),
                    "all_hold": rep.all_hold(),
                }));
            } else {
                println!("direction cover, seed {seed}");
                print_row("precover         ", &rep.precover.seq, Some(&rep.precover.claims));
                print_row("cover of middle  ", &rep.cover_of_middle, None);
                print_row("composite row    ", &rep.first_row, None);
                print_row("final row        ", &rep.final_row, None);
                println!("pipeline claims:");
                print_claims("    ", &rep.claims);
            }
            if rep.all_hold() {
                0
            } else {
                1
            }
        }
        DirectionArg::Envelope => {
            let rep: BackwardReport = must(envelope_pipeline(&c, seed));
            if json {
                print_json(&json!({
                    "direction": "envelope",
                    "seed": seed,
                    "rows": [
                        row_json("precover", &rep.precover.seq, Some(&rep.precover.claims)),
                        row_json("envelope of kernel", &rep.envelope.seq, Some(&rep.envelope.claims)),
                        row_json("pushout", &rep.pushout_row, None),
                    ],
                    "claims": claims_json(&rep.claims),
                    "all_hold": rep.all_hold(),
                }));
            } else {
                println!("direction envelope, seed {seed}");
                print_row("precover          ", &rep.precover.seq, Some(&rep.precover.claims));
                print_row("envelope of kernel", &rep.envelope.seq, Some(&rep.envelope.claims));
                print_row("pushout row       ", &rep.pushout_row, None);
                println!("pipeline claims:");
                print_claims("    ", &rep.claims);
            }
            if rep.all_hold() {
                0
            } else {
                1
            }
        }
    }
}

fn order_str<T: std::fmt::Display>(o: &Option<T>) -> String {
    match o {
        Some(d) => d.to_string(),
        None => "infinite".into(),
    }
}

fn cmd_filtration(
    file: &Path,
    window: &Option<String>,
    max_steps: usize,
    seed: u64,
    ring: &Option<String>,
    json: bool,
) -> i32 {
    let y = load_complex(file, ring);
    let win = window
        .as_deref()
        .map(window_flag)
        .unwrap_or_else(|| y.support().unwrap_or((0, 0)));
    let family = standard_family(y.ring(), win);
    let (run, cert): (_, RunCertificate) = must(et_run_certified(&y, &family, max_steps, seed));
    let status = match run.status {
        EtStatus::Complete => "complete",
        EtStatus::MaxSteps => "max-steps",
    };
    if json {
        let log: Vec<Value> = run
            .log
            .iter()
            .map(|e: &EtLogEntry| {
                json!({
                    "generator": e.generator,
                    "order_before": e.order_before.as_ref().map(|d| d.to_string()),
                    "order_after": e.order_after.as_ref().map(|d| d.to_string()),
                    "accepted": e.accepted,
                })
            })
            .collect();
        print_json(&json!({
            "seed": seed,
            "window": [win.0, win.1],
            "family_size": family.len(),
            "status": status,
            "steps": cert.steps,
            "orthogonal": cert.perp,
            "layers": cert.filtration.layers,
            "failures": cert.filtration.failures,
            "log": log,
            "certified": cert.ok(),
        }));
    } else {
        println!(
            "extension run over {}: family of {}, window {}..{}, budget {max_steps}, seed {seed}",
            y.ring(),
            family.len(),
            win.0,
            win.1
        );
        for e in &run.log {
            let verdict = if e.accepted { "accepted" } else { "rejected" };
            println!(
                "  generator #{}: obstruction order {} -> {}, {verdict}",
                e.generator,
                order_str(&e.order_before),
                order_str(&e.order_after)
            );
        }
        println!("status: {status} after {} accepted steps", cert.steps);
        println!(
            "final stage orthogonal to the family: {}",
            if cert.perp { "yes" } else { "no" }
        );
        println!("filtration layers (family indices): {:?}", cert.filtration.layers);
        for f in &cert.filtration.failures {
            println!("  filtration failure: {f}");
        }
        println!("certificate: {}", if cert.ok() { "valid" } else { "NOT valid" });
    }
    if cert.ok() {
        0
    } else {
        1
    }
}

const SUITE_TOKENS: [&str; 12] = [
    "snf",
    "ext-oracle",
    "shift-iso",
    "disk-iso",
    "sphere-iso",
    "homotopy",
    "corpus",
    "cogenerators",
    "lifting",
    "approx",
    "et",
    "all",
];

fn cmd_verify(
    suites: &[String],
    trials: Option<usize>,
    seed: u64,
    max_gens: usize,
    json: bool,
) -> i32 {
    if max_gens == 0 {
        fail_usage("--max-gens must be at least 1");
    }
    let mut tokens: Vec<&str> = Vec::new();
    for s in suites {
        if s == "all" {
            for t in SUITE_TOKENS.iter().filter(|t| **t != "all") {
                if !tokens.contains(t) {
                    tokens.push(t);
                }
            }
        } else if SUITE_TOKENS.contains(&s.as_str()) {
            if !tokens.iter().any(|t| t == s) {
                tokens.push(s);
            }
        } else {
            fail_usage(&format!(
                "unknown suite \"{s}\"; expected one of: {}",
                SUITE_TOKENS.join(", ")
            ));
        }
    }
    if !json {
        println!("cotor verify — seed {seed}, max generators {max_gens}");
    }
    let mut outcomes: Vec<SuiteOutcome> = Vec::new();
    let mut emit = |out: SuiteOutcome| {
        if !json {
            println!("{}", out.render());
        }
        outcomes.push(out);
    };
    for t in &tokens {
        match *t {
            "snf" => emit(must(run_snf(trials.unwrap_or(200), seed))),
            "ext-oracle" => emit(must(run_ext_oracle(seed))),
            "shift-iso" => emit(must(run_shift_iso(trials.unwrap_or(60), seed, max_gens))),
            "disk-iso" => emit(must(run_disk_iso(trials.unwrap_or(40), seed, max_gens))),
            "sphere-iso" => emit(must(run_sphere_iso(trials.unwrap_or(40), seed, max_gens))),
            "homotopy" => {
                let cases = trials.unwrap_or(40);
                emit(must(run_homotopy(cases, (cases / 5).max(4), seed, max_gens)));
            }
            "corpus" => emit(must(run_corpus(trials.unwrap_or(200), seed, max_gens))),
            "cogenerators" => {
                emit(must(run_cogenerators(trials.unwrap_or(40), seed, max_gens)))
            }
            "lifting" => emit(must(run_lifting(trials.unwrap_or(60), seed, max_gens))),
            "approx" => {
                emit(must(run_approx_forward(trials.unwrap_or(10), seed, max_gens)));
                emit(must(run_approx_backward(trials.unwrap_or(10), seed, max_gens)));
            }
            "et" => emit(must(run_et(trials.unwrap_or(10), seed, max_gens))),
            _ => unreachable!("tokens are validated above"),
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if json {
        let arr: Vec<Value> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "suite": o.name,
                    "seed": o.seed,
                    "cases": o.cases,
                    "failures": o.failures,
                    "notes": o.notes,
                    "seconds": o.elapsed.as_secs_f64(),
                    "passed": o.passed(),
                })
            })
            .collect();
        print_json(&json!({
            "seed": seed,
            "max_gens": max_gens,
            "suites": arr,
            "passed": failed == 0,
        }));
    } else {
        println!(
            "suites: {} run, {} passed, {failed} failed",
            outcomes.len(),
            outcomes.len() - failed
        );
    }
    if failed == 0 {
        0
    } else {
        1
    }
}
