use std::fmt::Write;

use hyperspace_core::exact::{fmt_rat, fmt_vec};
use hyperspace_core::json::{vec_json, vecs_json};
use hyperspace_core::{ExtRat, Polyhedron, Rat, RatVec};
use serde_json::{json, Value};

pub struct Output {
    pub table: String,
    pub json: Value,
    /// False when a verification ran and found a failing check.
    pub success: bool,
}

impl Output {
    pub fn new(table: Table, json: Value) -> Self {
        Self { table: table.render(), json, success: true }
    }
}

#[derive(Default)]
pub struct Table {
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) -> &mut Self {
        self.rows.push(cells.into_iter().map(Into::into).collect());
        self
    }

    pub fn kv(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.row([key.to_string(), value.into()])
    }

    pub fn render(&self) -> String {
        let ncols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..ncols)
            .map(|j| self.rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in &self.rows {
            let mut line = String::new();
            for (j, c) in r.iter().enumerate() {
                if j + 1 == r.len() {
                    line.push_str(c);
                } else {
                    let _ = write!(line, "{c:<w$}  ", w = widths[j]);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn ext(v: &ExtRat) -> String {
    v.to_string()
}

pub fn ext_json(v: &ExtRat) -> Value {
    Value::String(v.to_string())
}

pub fn rat(r: &Rat) -> String {
    fmt_rat(r)
}

pub fn vec(v: &[Rat]) -> String {
    fmt_vec(v)
}

pub fn vecs(vs: &[RatVec]) -> String {
    if vs.is_empty() {
        "-".into()
    } else {
        vs.iter().map(|v| vec(v)).collect::<Vec<_>>().join(" ")
    }
}

pub fn opt_vec_json(v: Option<&RatVec>) -> Value {
    v.map_or(Value::Null, |v| vec_json(v))
}

/// Both representations, one generator or inequality per line.
pub fn polyhedron_table(t: &mut Table, p: &Polyhedron) {
    t.kv("dim", p.dim().to_string());
    let v = p.vrep();
    t.kv("vertices", vecs(&v.vertices));
    t.kv("rays", vecs(&v.rays));
    t.kv("lineality", vecs(&v.lineality));
    let h = p.hrep();
    if h.a.nrows() == 0 {
        t.kv("inequalities", "-");
    }
    for (i, (row, b)) in h.a.rows.iter().zip(&h.b).enumerate() {
        t.kv(if i == 0 { "inequalities" } else { "" }, format!("{} . x <= {}", vec(row), rat(b)));
    }
}

pub fn cone_json(rays: &[RatVec], lineality: &[RatVec]) -> Value {
    json!({"rays": vecs_json(rays), "lineality": vecs_json(lineality)})
}
