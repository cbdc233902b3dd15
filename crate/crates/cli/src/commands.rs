use std::path::Path;

use hyperspace_core::cones::{classify, dual_cone_generators, recession_cone, verify_lemma_3_1};
use hyperspace_core::exact::{parse_rat, parse_vec};
use hyperspace_core::json::{parse_polyhedron, parse_subspace, polyhedron_json, vec_json, vecs_json};
use hyperspace_core::metric::{hausdorff, quotient, verify_prop_4_2, QuotientMap, Side};
use hyperspace_core::polyhedra::{
    convex_combination, hull_union, minkowski_sum, nearest_point, scale, support, translate,
};
use hyperspace_core::witness::{all_nonempty_subsets, biorthogonal_family, verify_witness, witness_family};
use hyperspace_core::{GeomError, Polyhedron, Rat, RatVec};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{self, cone_json, ext, ext_json, opt_vec_json, polyhedron_table, vec, vecs, Output, Table};
use crate::{verify, Verb};

type Res<T> = Result<T, CliError>;

pub fn load(path: &Path) -> Res<Polyhedron> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_polyhedron(&text).map_err(|e| CliError::geom(path, e))
}

fn load_dim(path: &Path, n: usize) -> Res<Polyhedron> {
    let p = load(path)?;
    if p.dim() != n {
        let e = GeomError::DimensionMismatch(format!("set has dimension {}, expected {n}", p.dim()));
        return Err(CliError::geom(path, e));
    }
    Ok(p)
}

fn rat_arg(flag: &str, s: &str) -> Res<Rat> {
    parse_rat(s).map_err(|e| CliError::arg(flag, e))
}

fn vec_arg(flag: &str, s: &str, n: usize) -> Res<RatVec> {
    let v = parse_vec(s).map_err(|e| CliError::arg(flag, e))?;
    if v.len() != n {
        return Err(CliError::arg(flag, GeomError::DimensionMismatch(format!("vector has {} entries, expected {n}", v.len()))));
    }
    Ok(v)
}

fn at<T>(path: &Path, r: hyperspace_core::Result<T>) -> Res<T> {
    r.map_err(|e| CliError::geom(path, e))
}

fn set_output(p: &Polyhedron) -> Output {
    let mut t = Table::new();
    polyhedron_table(&mut t, p);
    Output::new(t, polyhedron_json(p))
}

pub fn run(verb: &Verb) -> Res<Output> {
    match verb {
        Verb::Classify { file } => {
            let c = classify(&load(file)?);
            let mut t = Table::new();
            t.kv("tag", c.tag.to_string()).kv("space", c.tag.space()).kv("clause", c.clause.clone());
            t.kv("lineality codimension", c.codim_lineality.to_string()).kv("reason", c.detail.clone());
            let j = json!({
                "tag": c.tag, "space": c.tag.space(), "clause": c.clause,
                "codim_lineality": c.codim_lineality, "detail": c.detail,
            });
            Ok(Output::new(t, j))
        }
        Verb::Hausdorff { a, b } => {
            let pa = load(a)?;
            let pb = load_dim(b, pa.dim())?;
            let h = at(a, hausdorff(&pa, &pb))?;
            let side = h.witness_side.map(|s| match s {
                Side::AtoB => "A->B",
                Side::BtoA => "B->A",
            });
            let mut t = Table::new();
            t.kv("value", ext(&h.value));
            if let Some(p) = &h.witness_point {
                t.kv("witness", vec(p));
            }
            if let Some(s) = side {
                t.kv("side", s);
            }
            if let Some(f) = &h.separator {
                t.kv("separator", vec(f));
            }
            t.kv("attained", h.attained.to_string());
            if let Some(e) = &h.explanation {
                t.kv("reason", e.clone());
            }
            let j = json!({
                "value": ext_json(&h.value),
                "witness": opt_vec_json(h.witness_point.as_ref()),
                "side": side,
                "separator": opt_vec_json(h.separator.as_ref()),
                "attained": h.attained,
                "explanation": h.explanation,
            });
            Ok(Output::new(t, j))
        }
        Verb::Support { file, dir } => {
            let p = load(file)?;
            let f = vec_arg("dir", dir, p.dim())?;
            let s = at(file, support(&p, &f))?;
            let mut t = Table::new();
            t.kv("direction", vec(&f)).kv("support", ext(&s));
            Ok(Output::new(t, json!({"direction": vec_json(&f), "value": ext_json(&s)})))
        }
        Verb::Dist { file, point } => {
            let p = load(file)?;
            let x = vec_arg("point", point, p.dim())?;
            let near = at(file, nearest_point(&p, &x))?;
            let mut t = Table::new();
            t.kv("point", vec(&x)).kv("distance", output::rat(&near.distance)).kv("nearest", vec(&near.point));
            if let Some(f) = &near.separator {
                t.kv("separator", vec(f));
            }
            let j = json!({
                "point": vec_json(&x), "distance": output::rat(&near.distance),
                "nearest": vec_json(&near.point), "separator": opt_vec_json(near.separator.as_ref()),
            });
            Ok(Output::new(t, j))
        }
        Verb::Convert { file } => Ok(set_output(&load(file)?)),
        Verb::Sum { a, b } => {
            let pa = load(a)?;
            Ok(set_output(&at(b, minkowski_sum(&pa, &load_dim(b, pa.dim())?))?))
        }
        Verb::Hull { a, b } => {
            let pa = load(a)?;
            Ok(set_output(&at(b, hull_union(&pa, &load_dim(b, pa.dim())?))?))
        }
        Verb::Scale { file, r } => Ok(set_output(&scale(&load(file)?, &rat_arg("r", r)?))),
        Verb::Combine { a, b, t } => {
            let pa = load(a)?;
            let pb = load_dim(b, pa.dim())?;
            let t = rat_arg("t", t)?;
            convex_combination(&pa, &pb, &t).map(|p| set_output(&p)).map_err(|e| CliError::arg("t", e))
        }
        Verb::Translate { file, dir } => {
            let p = load(file)?;
            let v = vec_arg("dir", dir, p.dim())?;
            Ok(set_output(&at(file, translate(&p, &v))?))
        }
        Verb::Quotient { file, subspace } => {
            let p = load(file)?;
            let text = std::fs::read_to_string(subspace).map_err(|e| CliError::io(subspace, e))?;
            let (n, basis) = at(subspace, parse_subspace(&text))?;
            if n != p.dim() {
                let e = GeomError::DimensionMismatch(format!("subspace has dimension {n}, set {}", p.dim()));
                return Err(CliError::geom(subspace, e));
            }
            let q = at(subspace, QuotientMap::new(basis, n))?;
            let image = at(file, quotient(&p, &q))?;
            let mut out = set_output(&image);
            let mut t = Table::new();
            t.kv("complement basis", vecs(&q.complement_basis));
            out.table = t.render() + &out.table;
            out.json["complement_basis"] = vecs_json(&q.complement_basis);
            Ok(out)
        }
        Verb::Recession { file } => {
            let v = recession_cone(&load(file)?);
            Ok(set_output(&v.to_polyhedron()))
        }
        Verb::DualCone { file } => {
            let v = recession_cone(&load(file)?);
            let g = dual_cone_generators(&v);
            let mut t = Table::new();
            t.kv("generators", vecs(&g));
            Ok(Output::new(t, json!({"generators": vecs_json(&g)})))
        }
        Verb::Lemma31 { file } => {
            let p = load(file)?;
            let v = recession_cone(&p);
            let g = dual_cone_generators(&v);
            let holds = verify_lemma_3_1(&p);
            let mut t = Table::new();
            t.kv("cone rays", vecs(&v.rays)).kv("cone lineality", vecs(&v.lineality));
            t.kv("polar generators", vecs(&g)).kv("holds", holds.to_string());
            let j = json!({"cone": cone_json(&v.rays, &v.lineality), "polar_generators": vecs_json(&g), "holds": holds});
            let mut out = Output::new(t, j);
            out.success = holds;
            Ok(out)
        }
        Verb::Prop42 { a, b, c, a2, b2, r, t, t2 } => {
            let pa = load(a)?;
            let n = pa.dim();
            let (pb, pc, pa2, pb2) = (load_dim(b, n)?, load_dim(c, n)?, load_dim(a2, n)?, load_dim(b2, n)?);
            let (r, t, t2) = (rat_arg("r", r)?, rat_arg("t", t)?, rat_arg("t2", t2)?);
            let rep = verify_prop_4_2(&pa, &pb, &pc, &pa2, &pb2, &r, &t, &t2).map_err(|e| CliError::arg("t", e))?;
            let mut tab = Table::new();
            tab.row(["clause", "lhs", "relation", "rhs", "status"]);
            let mut rows = Vec::new();
            for cl in &rep.clauses {
                let status = format!("{:?}", cl.status);
                tab.row([cl.clause.to_string(), ext(&cl.lhs), cl.relation.to_string(), ext(&cl.rhs), status.clone()]);
                rows.push(json!({
                    "clause": cl.clause, "lhs": ext_json(&cl.lhs), "relation": cl.relation,
                    "rhs": ext_json(&cl.rhs), "status": status,
                }));
            }
            let mut out = Output::new(tab, json!({"clauses": rows, "all_pass": rep.all_pass()}));
            out.success = rep.all_pass();
            Ok(out)
        }
        Verb::Witness { file, eps, n } => {
            let p = load(file)?;
            let eps = rat_arg("eps", eps)?;
            let v = recession_cone(&p);
            let w = at(file, witness_family(&v, &eps, *n))?;
            let rep = at(file, verify_witness(&w))?;
            let mut t = Table::new();
            t.kv("h", vec(&w.h)).kv("f", vec(&w.f)).kv("x", vec(&w.x)).kv("y", vec(&w.y));
            t.kv("epsilon", output::rat(&w.epsilon)).kv("delta", output::rat(&w.delta));
            t.kv("identities", rep.identities.to_string());
            let head = t.render();
            let mut t = Table::new();
            t.row(["n", "m", "d_H", "bound", "pass"]);
            let mut checks = Vec::new();
            for c in rep.near.iter().chain(&rep.separated) {
                let m = c.m.map_or("V".to_string(), |m| m.to_string());
                let rel = if c.m.is_some() { ">=" } else { "<=" };
                t.row([c.n.to_string(), m.clone(), ext(&c.value), format!("{rel} {}", output::rat(&c.bound)), c.pass.to_string()]);
                checks.push(json!({
                    "n": c.n, "m": c.m, "value": ext_json(&c.value), "relation": rel,
                    "bound": output::rat(&c.bound), "pass": c.pass,
                }));
            }
            let members: Vec<Value> = w.members.iter().map(polyhedron_json).collect();
            let j = json!({
                "h": vec_json(&w.h), "f": vec_json(&w.f), "x": vec_json(&w.x), "y": vec_json(&w.y),
                "epsilon": output::rat(&w.epsilon), "delta": output::rat(&w.delta),
                "members": members, "identities": rep.identities, "checks": checks, "all_pass": rep.all_pass(),
            });
            let mut out = Output::new(t, j);
            out.table = format!("{head}\n{}", out.table);
            out.success = rep.all_pass();
            Ok(out)
        }
        Verb::Biorth { n, subsets } => {
            let sets = match subsets {
                Some(s) => parse_subsets(s)?,
                None => all_nonempty_subsets(*n),
            };
            let (members, bound) = biorthogonal_family(*n, &sets).map_err(|e| CliError::arg("subsets", e))?;
            let mut t = Table::new();
            t.row(["A", "B", "d_H", "bound", "pass"]);
            let mut pairs = Vec::new();
            let mut all = true;
            let fmt_set = |s: &[usize]| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    let d = hausdorff(&members[i], &members[j]).map_err(|e| CliError::arg("subsets", e))?.value;
                    let pass = d >= hyperspace_core::ExtRat::Finite(bound.clone());
                    all &= pass;
                    t.row([fmt_set(&sets[i]), fmt_set(&sets[j]), ext(&d), format!(">= {}", output::rat(&bound)), pass.to_string()]);
                    pairs.push(json!({"a": sets[i], "b": sets[j], "value": ext_json(&d), "pass": pass}));
                }
            }
            let j = json!({
                "bound": output::rat(&bound),
                "members": members.iter().map(polyhedron_json).collect::<Vec<_>>(),
                "pairs": pairs, "all_pass": all,
            });
            let mut out = Output::new(t, j);
            out.success = all;
            Ok(out)
        }
        Verb::VerifyAll { files, samples, seed } => verify::run(files, *samples, *seed),
    }
}

fn parse_subsets(s: &str) -> Res<Vec<Vec<usize>>> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim().parse::<usize>().map_err(|_| {
                        CliError::arg("subsets", GeomError::Parse(format!("invalid index {x:?}")))
                    })
                })
                .collect()
        })
        .collect()
}
