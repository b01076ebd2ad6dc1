use std::fmt::Write as _;

use caf_core::model::{fmt_set, ArgSet, Query, Witness};

/// Outcome of one solver run on the query.
pub struct MethodRun {
    pub name: &'static str,
    pub answer: bool,
    pub stats: Vec<(&'static str, u64)>,
}

/// The `check` report. Rendered as `key: value` lines in a fixed order.
pub struct RunReport {
    pub instance: String,
    pub query: Query,
    pub method: String,
    pub configuration_check: Option<ArgSet>,
    pub runs: Vec<MethodRun>,
    pub verdict: &'static str,
    pub witness: Option<Witness>,
    pub time_ms: Option<u128>,
}

fn verdict_word(answer: bool) -> &'static str {
    if answer {
        "controllable"
    } else {
        "not-controllable"
    }
}

impl RunReport {
    pub fn verdict_of(answer: bool) -> &'static str {
        verdict_word(answer)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k}: {v}");
        };
        kv("instance", &self.instance);
        kv("semantics", &self.query.semantics);
        kv("mode", &self.query.mode);
        kv("acceptance", &self.query.acceptance);
        kv("target", &fmt_set(&self.query.target));
        kv("method", &self.method);
        if let Some(conf) = &self.configuration_check {
            kv("configuration_check", &fmt_set(conf));
        }
        kv("verdict", &self.verdict);
        for run in &self.runs {
            kv(&format!("{}.verdict", run.name), &verdict_word(run.answer));
            for (key, value) in &run.stats {
                kv(&format!("{}.{key}", run.name), value);
            }
        }
        if let Some(w) = &self.witness {
            kv("witness.configuration", &w.configuration);
            kv(
                "witness.completion.arguments",
                &fmt_set(w.completion.arguments()),
            );
            let attacks: Vec<String> = w
                .completion
                .attacks()
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            kv(
                "witness.completion.attacks",
                &format!("{{{}}}", attacks.join(",")),
            );
            if let Some(ext) = &w.extension {
                kv("witness.extension", &fmt_set(ext));
            }
        }
        if let Some(ms) = self.time_ms {
            kv("time_ms", &ms);
        }
        out
    }
}
