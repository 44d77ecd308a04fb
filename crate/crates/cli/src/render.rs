use std::io::IsTerminal;

use serde_json::json;

use crate::commands::Report;

pub fn json(rep: &Report) -> String {
    let doc = json!({
        "command": rep.command,
        "inputs": rep.inputs,
        "results": rep.results,
        "checks": rep.checks,
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

fn colour() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

pub fn table(rep: &Report) -> String {
    let paint = colour();
    let mut out = String::new();
    for l in &rep.lines {
        out.push_str(l);
        out.push('\n');
    }
    if !rep.checks.is_empty() {
        out.push_str("checks:\n");
        for c in &rep.checks {
            let tag = match (c.pass, paint) {
                (true, true) => "\x1b[32mPASS\x1b[0m",
                (false, true) => "\x1b[31mFAIL\x1b[0m",
                (true, false) => "PASS",
                (false, false) => "FAIL",
            };
            out.push_str(&format!("  {tag} {}: {} vs {}\n", c.name, c.lhs, c.rhs));
        }
    }
    out
}
