use std::io::{self, Write};
use std::time::Instant;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Output {
    Json,
    Text,
}

/// Line-delimited report: one command echo, one record per item, one summary.
pub struct Report<W: Write> {
    out: W,
    format: Output,
    started: Instant,
    items: usize,
    failed: usize,
}

impl<W: Write> Report<W> {
    pub fn start(out: W, format: Output, command: &str, args: &[String]) -> io::Result<Self> {
        let mut r = Report {
            out,
            format,
            started: Instant::now(),
            items: 0,
            failed: 0,
        };
        match format {
            Output::Json => {
                let rec = json!({"record": "command", "command": command, "args": args});
                writeln!(r.out, "{rec}")?;
            }
            Output::Text => writeln!(r.out, "# schurpos {}", args.join(" "))?,
        }
        Ok(r)
    }

    /// Writes one item. `text` is the human-readable rendering; `fields`
    /// become the JSON payload alongside `index`, `input` and `pass`.
    pub fn item(&mut self, input: &str, pass: bool, fields: Map<String, Value>, text: &str) -> io::Result<()> {
        let index = self.items;
        self.items += 1;
        if !pass {
            self.failed += 1;
        }
        match self.format {
            Output::Json => {
                let mut rec = Map::new();
                rec.insert("record".into(), "item".into());
                rec.insert("index".into(), index.into());
                rec.insert("input".into(), input.into());
                rec.insert("pass".into(), pass.into());
                rec.extend(fields);
                writeln!(self.out, "{}", Value::Object(rec))?;
            }
            Output::Text => {
                let flag = if pass { "ok  " } else { "FAIL" };
                writeln!(self.out, "{flag} [{index}] {input}: {text}")?;
            }
        }
        self.out.flush()
    }

    /// Writes the summary and returns whether every item passed.
    pub fn finish(mut self, extra: Option<Value>) -> io::Result<bool> {
        let ms = self.started.elapsed().as_millis() as u64;
        let passed = self.items - self.failed;
        match self.format {
            Output::Json => {
                let mut rec = json!({
                    "record": "summary",
                    "items": self.items,
                    "passed": passed,
                    "failed": self.failed,
                    "duration_ms": ms,
                });
                if let Some(extra) = extra {
                    rec["suites"] = extra;
                }
                writeln!(self.out, "{rec}")?;
            }
            Output::Text => writeln!(
                self.out,
                "summary: {} items, {passed} passed, {} failed ({ms} ms)",
                self.items, self.failed
            )?,
        }
        self.out.flush()?;
        Ok(self.failed == 0)
    }
}
