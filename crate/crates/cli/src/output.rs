//! Text and machine-readable rendering of reports.
//!
//! The machine format is one `key=value` line per entry, in report order:
//!
//! ```text
//! command=axioms
//! target=su2
//! fact.<key>=<value>
//! check.<name>=pass
//! witness.<name>=<text>
//! summary.passed=6
//! summary.total=6
//! ```
//!
//! Backslashes and newlines are escaped as `\\` and `\n`, and `=` in keys as `\=`.

use equichern::report::{Check, Report};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\n', "\\n")
}

fn escape_key(s: &str) -> String {
    escape(s).replace('=', "\\=")
}

/// Splits at the first `=` that is not escaped.
fn split_entry(line: &str) -> Option<(&str, &str)> {
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            '\\' if !escaped => escaped = true,
            '=' if !escaped => return Some((&line[..i], &line[i + 1..])),
            _ => escaped = false,
        }
    }
    None
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some(other) => out.push(other),
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

pub fn machine(command: &str, target: &str, r: &Report) -> String {
    let mut out = format!("command={}\ntarget={}\n", escape(command), escape(target));
    for (k, v) in &r.facts {
        out.push_str(&format!("fact.{}={}\n", escape_key(k), escape(v)));
    }
    for c in &r.checks {
        out.push_str(&format!("check.{}={}\n", escape_key(&c.name), if c.passed { "pass" } else { "fail" }));
        if let Some(w) = &c.witness {
            out.push_str(&format!("witness.{}={}\n", escape_key(&c.name), escape(w)));
        }
    }
    out.push_str(&format!("summary.passed={}\nsummary.total={}\n", r.count_passed(), r.checks.len()));
    out
}

/// Inverse of [`machine`]: `(command, target, report)`.
pub fn parse_machine(text: &str) -> Option<(String, String, Report)> {
    let mut command = None;
    let mut target = None;
    let mut r = Report::new();
    for line in text.lines() {
        let (k, v) = split_entry(line)?;
        let v = unescape(v);
        if k == "command" {
            command = Some(v);
        } else if k == "target" {
            target = Some(v);
        } else if let Some(key) = k.strip_prefix("fact.") {
            r.fact(unescape(key), v);
        } else if let Some(name) = k.strip_prefix("check.") {
            r.push(Check { name: unescape(name), passed: v == "pass", witness: None });
        } else if let Some(name) = k.strip_prefix("witness.") {
            let name = unescape(name);
            let c = r.checks.iter_mut().rev().find(|c| c.name == name)?;
            c.witness = Some(v);
        } else if !k.starts_with("summary.") {
            return None;
        }
    }
    Some((command?, target?, r))
}

pub fn text(command: &str, target: &str, r: &Report) -> String {
    format!("{command} on {target}\n{r}\n")
}
