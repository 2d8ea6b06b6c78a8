//! Seeded cross-checks over random networks, one JSON line per check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use circnet::checks::{self, mutant_sign, Failure, SignFn};
use circnet::generate::{random_network, GenOptions, Kind};
use circnet::walks::sign_s;
use circnet::Network;

use crate::Status;

const KINDS: [(Kind, &str); 4] = [
    (Kind::PerfectlyOriented, "perfectly-oriented"),
    (Kind::Acyclic, "acyclic"),
    (Kind::General, "general"),
    (Kind::NonPlanar, "non-planar"),
];

/// Walk systems are enumerated exhaustively, so their budget stays small.
const INVOLUTION_BUDGET: u32 = 10;

fn suite(
    n: &Network,
    kind: Kind,
    degree: u32,
    sign: SignFn,
    rng: &mut ChaCha8Rng,
) -> Vec<(&'static str, circnet::Result<Vec<Failure>>)> {
    let mut out = Vec::new();
    match kind {
        Kind::PerfectlyOriented => {
            out.push(("main-theorem", checks::main_theorem(n, degree, sign)));
            if n.edge_count() <= checks::BRUTE_FORCE_EDGE_LIMIT {
                out.push(("flows-bruteforce", checks::flows_vs_bruteforce(n)));
            }
            out.push((
                "involution",
                checks::involution(n, degree.min(INVOLUTION_BUDGET) as usize),
            ));
        }
        Kind::Acyclic => {
            out.push(("main-theorem", checks::main_theorem(n, degree, sign)));
            out.push(("lindstrom", checks::lindstrom(n, rng)));
        }
        Kind::General => out.push(("general-formula", checks::general_formula(n, rng, 2))),
        Kind::NonPlanar => out.push(("nonplanar-entries", checks::nonplanar_entries(n, degree))),
    }
    out
}

/// Stops at the first case with a counterexample and prints it with the
/// offending network.
pub fn run(seed: u64, count: usize, degree: u32, mutant: bool) -> anyhow::Result<Status> {
    let sign: SignFn = if mutant { mutant_sign } else { sign_s };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let (kind, label) = KINDS[k % KINDS.len()];
        let case = format!("case{k}");
        let n = random_network(&mut rng, &GenOptions::new(kind), &case);
        let mut failed = false;
        for (check, result) in suite(&n, kind, degree, sign, &mut rng) {
            let (status, details) = match result {
                Ok(f) if f.is_empty() => ("pass", Vec::new()),
                Ok(f) => ("fail", f.iter().map(ToString::to_string).collect()),
                Err(e) => ("error", vec![e.to_string()]),
            };
            let mut line = json!({
                "case": case,
                "kind": label,
                "check": check,
                "status": status,
                "details": details,
            });
            if status != "pass" {
                failed = true;
                line["network"] = serde_json::to_value(n.doc())?;
            }
            println!("{}", serde_json::to_string(&line)?);
        }
        if failed {
            eprintln!("counterexample in {case}");
            return Ok(Status::Mismatch);
        }
    }
    eprintln!("{count} case(s), no counterexample");
    Ok(Status::Ok)
}
