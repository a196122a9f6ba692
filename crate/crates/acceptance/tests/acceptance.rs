//! One line per criterion on stdout, failing checks indented below it. The
//! process fails if any criterion fails.

use std::process::ExitCode;

use sun_casimir::Config;
use sun_casimir_cli::config::{heavy_caps, Tier};
use sun_casimir_cli::suite::{run_suite, Workbench};

fn main() -> ExitCode {
    let config = Config {
        caps: heavy_caps(),
        ..Config::default()
    };
    let mut bench = Workbench::new(config, None);
    println!("acceptance criteria, heavy tier");
    let report = run_suite(Tier::Heavy, &mut bench, |c| {
        println!("{}", c.summary_line());
        for f in c.failures() {
            println!(
                "    {}: residual {:.3e} > {:.1e} {}",
                f.name, f.residual, f.tolerance, f.detail
            );
        }
    });
    let failed = report.criteria.iter().filter(|c| !c.passed()).count();
    println!(
        "{} of {} criteria passed",
        report.criteria.len() - failed,
        report.criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
