//! Rendering of command results as JSON, CSV or plain text.

use clap::{ArgMatches, Command, ValueEnum};
use polyexpand::counting::MAX_ENUMERATION_D;
use polyexpand::expansion::tuple_budget;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        }
    }
}

/// Echo of the invocation. `--jobs` is left out because it never changes
/// the output.
pub struct RunConfig {
    subcommand: String,
    flags: Vec<(String, String)>,
    seed: u64,
    format: Format,
}

const GLOBAL_FLAGS: [&str; 3] = ["format", "seed", "jobs"];

impl RunConfig {
    pub fn new(subcommand: &Command, matches: &ArgMatches, seed: u64, format: Format) -> Self {
        let flags = subcommand
            .get_arguments()
            .filter(|a| !GLOBAL_FLAGS.contains(&a.get_id().as_str()))
            .filter_map(|a| {
                let raw = matches.get_raw(a.get_id().as_str())?;
                let vals: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
                let name = a.get_long().unwrap_or(a.get_id().as_str());
                Some((name.to_string(), vals.join(",")))
            })
            .collect();
        RunConfig { subcommand: subcommand.get_name().to_string(), flags, seed, format }
    }

    fn to_json(&self) -> Value {
        let flags: Map<String, Value> = self.flags.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        json!({
            "subcommand": self.subcommand,
            "flags": flags,
            "seed": self.seed,
            "format": self.format.name(),
            "budget": { "tuples": tuple_budget(), "max_partition_d": MAX_ENUMERATION_D },
        })
    }
}

/// Result of one command.
pub struct Output {
    pub value: Value,
    /// Header and rows for CSV output.
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// Preferred lines for pretty output.
    pub lines: Option<Vec<String>>,
    pub success: bool,
}

impl Output {
    pub fn new(value: Value) -> Self {
        Output { value, table: None, lines: None, success: true }
    }
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn render(config: &RunConfig, out: &Output) -> String {
    match config.format {
        Format::Json => {
            let doc = json!({
                "tool": "polyexpand",
                "version": VERSION,
                "config": config.to_json(),
                "result": out.value,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = format!("# polyexpand {VERSION}\n# config {}\n", config.to_json());
            let (header, rows) = match &out.table {
                Some((h, r)) => (h.iter().map(|c| c.to_string()).collect(), r.clone()),
                None => (vec!["field".to_string(), "value".to_string()], flatten(&out.value)),
            };
            s.push_str(&header.join(","));
            s.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Pretty => {
            let flags: Vec<String> = config.flags.iter().map(|(k, v)| format!("--{k} {v}")).collect();
            let mut s = format!(
                "polyexpand {VERSION} {} seed={} tuple-budget={} max-partition-d={}\nflags: {}\n",
                config.subcommand,
                config.seed,
                tuple_budget(),
                MAX_ENUMERATION_D,
                flags.join(" ")
            );
            let lines = match &out.lines {
                Some(l) => l.clone(),
                None => flatten(&out.value).into_iter().map(|kv| format!("{}: {}", kv[0], kv[1])).collect(),
            };
            for l in lines {
                s.push_str(&l);
                s.push('\n');
            }
            s
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// `[path, value]` rows with dotted paths. Serialized polynomials are skipped
/// in favour of their text form.
fn flatten(v: &Value) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    rows
}

fn walk(path: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if k != "json" {
                    walk(&join(k), x, rows);
                }
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            rows.push(vec![path.to_string(), format!("[{}]", parts.join(", "))]);
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                walk(&join(&i.to_string()), x, rows);
            }
        }
        _ => rows.push(vec![path.to_string(), scalar(v)]),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
