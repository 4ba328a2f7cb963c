use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::{Flags, Outcome};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Emitter {
    format: Format,
    meta: Value,
}

impl Emitter {
    pub fn new(flags: &Flags) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Emitter {
            format: flags.format,
            meta: json!({
                "tool": "pmskit",
                "version": env!("CARGO_PKG_VERSION"),
                "flags": flags,
                "timestamp": timestamp,
            }),
        }
    }

    pub fn emit(&self, out: &Outcome) -> Result<(), String> {
        match self.format {
            Format::Json => {
                let mut doc = out.doc.clone();
                if let Value::Object(m) = &mut doc {
                    m.insert("meta".into(), self.meta.clone());
                }
                println!("{doc}");
            }
            Format::Csv => print!("{}", to_csv(&out.doc)?),
            Format::Text => print!("{}", to_text(&out.doc)),
        }
        Ok(())
    }
}

/// Only the dimension table has a tabular form.
fn to_csv(doc: &Value) -> Result<String, String> {
    if doc["name"] != "dims" {
        return Err("csv output is only available for the dims table".into());
    }
    let mut s = String::from("weight,slice_dim,kernel_dim,span_dim,equal\n");
    for row in doc["cases"].as_array().into_iter().flatten() {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            row["weight"], row["slice_dim"], row["kernel_dim"], row["span_dim"], row["equal"]
        ));
    }
    Ok(s)
}

fn to_text(doc: &Value) -> String {
    if let (Some(name), Some(cases)) = (doc["name"].as_str(), doc["cases"].as_array()) {
        let status = if doc["passed"] == true {
            "PASSED"
        } else {
            "FAILED"
        };
        let mut s = format!("{name}: {status} ({} cases)\n", cases.len());
        for c in cases {
            s.push_str(&format!("  {c}\n"));
        }
        return s;
    }
    if let Some(results) = doc["results"].as_array() {
        let mut s = String::new();
        for r in results {
            let (a, v) = (&r["alpha"], &r["value"]);
            s.push_str(&format!(
                "alpha = {}{:+}i: {:.15}{:+.15}i ± {:.1e}\n",
                a["re"],
                a["im"].as_f64().unwrap_or(0.0),
                v["re"].as_f64().unwrap_or(f64::NAN),
                v["im"].as_f64().unwrap_or(f64::NAN),
                v["err"].as_f64().unwrap_or(f64::NAN),
            ));
        }
        return s;
    }
    format!(
        "{}\n",
        serde_json::to_string_pretty(doc).unwrap_or_default()
    )
}

#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) {
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
    {
        eprintln!("pmskit: could not size the worker pool: {e}");
    }
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) {
    eprintln!("pmskit: built without the parallel feature; --threads is ignored");
}
