//! Run a few acceptance criteria in quick mode and print the transcript.
use shortres::suite::{run, Mode, SuiteConfig};

fn main() -> shortres::Result<()> {
    let cfg = SuiteConfig { mode: Mode::Quick, seed: 42, threads: Some(1), only: vec!["A8".into(), "A11".into(), "A12".into()] };
    let report = run(&cfg)?;
    print!("{}", report.transcript(true));
    println!("all gated criteria passed: {}", report.passed());
    Ok(())
}
