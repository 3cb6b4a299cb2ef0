use clap::{Args, ValueEnum};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// What a command produced: human-readable lines plus the same content as
/// structured results.
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub results: Vec<Value>,
    pub lines: Vec<String>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &'static str, config: Value) -> Self {
        Self {
            command,
            config,
            results: Vec::new(),
            lines: Vec::new(),
            pass: true,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn result(&mut self, v: Value, ok: bool) {
        self.results.push(v);
        self.pass &= ok;
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = self.lines.join("\n");
                out.push_str(if self.pass { "\nPASS\n" } else { "\nFAIL\n" });
                out
            }
            Format::Json => {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "config": self.config,
                    "results": self.results,
                    "pass": self.pass,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

pub fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
