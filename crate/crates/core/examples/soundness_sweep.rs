//! Seeded soundness sweep over small fields, printed as the CSV table.

use mlgeom::analysis::{soundness_sweep, CorpusConfig};
use mlgeom::cli::{render_report, report, OutputFormat, Request, RunConfig};
use mlgeom::{Enumeration, Result};

pub fn main() -> Result<()> {
    let corpus = CorpusConfig {
        primes: vec![3, 5, 7],
        random_sets: 1,
        random_omphaloi: 1,
        ..Default::default()
    };
    let summary = soundness_sweep(&corpus, &Enumeration::default())?;
    println!(
        "{} instances, {} where the theorem applies, {} violations, {} remainder failures, {} sharpness witnesses",
        summary.instances,
        summary.applicable,
        summary.violations,
        summary.remainder_failures,
        summary.sharp_evidence
    );

    let config = RunConfig {
        seed: corpus.seed,
        ..Default::default()
    };
    let table = render_report(&report(Request::Sweep { corpus }, &config)?, OutputFormat::Csv)?;
    for line in table.lines().take(6) {
        println!("{line}");
    }
    Ok(())
}
