//! Validate one or more category spec files and print per-check residuals.

use gcross_core::recouple::Engine;
use gcross_core::spec::load_spec;
use gcross_core::validate::validate_spec;
use std::path::Path;
use std::sync::Arc;

fn main() {
    let mut fail = false;
    for arg in std::env::args().skip(1) {
        let spec = match load_spec(Path::new(&arg)) {
            Ok(s) => s,
            Err(e) => {
                println!("{arg}: load error: {e}");
                fail = true;
                continue;
            }
        };
        let engine = Engine::new(Arc::new(spec));
        let report = validate_spec(&engine);
        println!("== {arg}");
        for c in &report.checks {
            println!(
                "  {:<24} {} residual {:.3e}",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.residual
            );
            if !c.pass {
                fail = true;
            }
        }
    }
    std::process::exit(if fail { 1 } else { 0 });
}
