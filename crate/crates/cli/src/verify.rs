//! `verify-all`: every exact invariant on the given sets and on each pair.

use std::path::PathBuf;

use hyperspace_core::cones::{classify, same_component, verify_lemma_3_1};
use hyperspace_core::exact::{dual_norm, kernel_basis, rat, ratio, scaled};
use hyperspace_core::metric::{delta_gap, hausdorff, verify_prop_4_2, verify_quotient_isometry, ClauseStatus, QuotientMap};
use hyperspace_core::polyhedra::{same_set, support, support_from_generators, translate};
use hyperspace_core::sample::Sampler;
use hyperspace_core::{ExtRat, Polyhedron, Rat, RatMat, RatVec};
use serde_json::json;

use crate::commands::load;
use crate::error::CliError;
use crate::output::{Output, Table};

struct Check {
    name: &'static str,
    subject: String,
    pass: bool,
    detail: String,
}

fn normalized(f: &[Rat]) -> RatVec {
    scaled(f, &(rat(1) / dual_norm(f)))
}

fn single(p: &Polyhedron, s: &mut Sampler, samples: usize, subject: &str, out: &mut Vec<Check>) {
    let mut push = |name, pass, detail: String| out.push(Check { name, subject: subject.to_string(), pass, detail });

    let from_h = Polyhedron::from_hrep(p.hrep().clone()).expect("nonempty");
    let from_v = Polyhedron::from_vrep(p.vrep().clone()).expect("nonempty");
    let pass = same_set(p, &from_h) && same_set(p, &from_v) && same_set(&from_h, &from_v);
    push("representations", pass, "H and V forms describe the same set".into());

    let n = p.dim();
    let mut bad = 0;
    for _ in 0..samples {
        let f = s.functional(n);
        if support(p, &f).ok() != Some(support_from_generators(p, &f)) {
            bad += 1;
        }
    }
    push("support", bad == 0, format!("LP and generator support agree on {samples} functionals ({bad} mismatches)"));

    push("polarity", verify_lemma_3_1(p), "characteristic cone is the polar of the dual cone".into());

    let v: RatVec = (0..n).map(|i| rat(i as i64 + 1)).collect();
    let moved = translate(p, &v).expect("dimension agrees");
    let c = classify(p).tag;
    let bound = ExtRat::Finite(rat(n as i64));
    let pass = classify(&moved).tag == c && hausdorff(p, &moved).map_or(false, |h| h.value <= bound);
    push("translation", pass, format!("class {c} kept and distance at most |v| = {n} under translation"));
}

fn pair(a: &Polyhedron, b: &Polyhedron, s: &mut Sampler, samples: usize, subject: &str, out: &mut Vec<Check>) {
    let mut push = |name, pass, detail: String| out.push(Check { name, subject: subject.to_string(), pass, detail });
    let n = a.dim();
    let h = match hausdorff(a, b) {
        Ok(h) => h,
        Err(e) => {
            push("hausdorff", false, e.to_string());
            return;
        }
    };
    let sym = hausdorff(b, a).map(|r| r.value) == Ok(h.value.clone());
    push("symmetry", sym, format!("d_H = {}", h.value));

    let same = same_component(a, b).unwrap_or(false);
    push("finiteness", same == h.value.is_finite(), format!("same component: {same}, d_H finite: {}", h.value.is_finite()));

    let mut dirs: Vec<RatVec> = (0..samples).map(|_| s.functional(n)).collect();
    dirs.extend(a.hrep().a.rows.iter().chain(&b.hrep().a.rows).map(|r| normalized(r)));
    let above = dirs.iter().filter(|f| delta_gap(a, b, f).map_or(true, |g| g > h.value)).count();
    push("gap bound", above == 0, format!("{} functionals, {above} with gap above d_H", dirs.len()));
    if h.value.is_finite() && h.separator.is_some() {
        let f = h.separator.as_ref().unwrap();
        let eq = delta_gap(a, b, f).ok() == Some(h.value.clone());
        push("separator", eq && h.attained, format!("gap at separator equals d_H = {}", h.value));
    }

    let (r, t, t2) = (ratio(-3, 2), ratio(1, 4), ratio(3, 4));
    match verify_prop_4_2(a, b, a, b, a, &r, &t, &t2) {
        Ok(rep) => {
            for cl in &rep.clauses {
                if cl.clause == 5 && !same {
                    continue;
                }
                if cl.status != ClauseStatus::HypothesisNotMet {
                    push("operations", cl.status == ClauseStatus::Pass, cl.to_string());
                }
            }
        }
        Err(e) => push("operations", false, e.to_string()),
    }

    let rows: Vec<RatVec> = a.hrep().a.rows.iter().chain(&b.hrep().a.rows).cloned().collect();
    let z = kernel_basis(&RatMat::new(rows, n));
    if !z.is_empty() && z.len() < n {
        let k = z.len();
        let pass = QuotientMap::new(z, n)
            .and_then(|q| verify_quotient_isometry(a, b, &q))
            .map_or(false, |rep| rep.holds());
        push("quotient", pass, format!("distance preserved modulo common lineality of dimension {k}"));
    }
}

pub fn run(files: &[PathBuf], samples: usize, seed: u64) -> Result<Output, CliError> {
    let sets: Vec<Polyhedron> = files.iter().map(|f| load(f)).collect::<Result<_, _>>()?;
    let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
    let mut s = Sampler::new(seed);
    let mut checks = Vec::new();
    for (p, name) in sets.iter().zip(&names) {
        single(p, &mut s, samples, name, &mut checks);
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].dim() != sets[j].dim() {
                continue;
            }
            pair(&sets[i], &sets[j], &mut s, samples, &format!("{} | {}", names[i], names[j]), &mut checks);
        }
    }
    let all = checks.iter().all(|c| c.pass);
    let mut t = Table::new();
    t.row(["check", "input", "result", "detail"]);
    for c in &checks {
        t.row([c.name.to_string(), c.subject.clone(), if c.pass { "PASS" } else { "FAIL" }.to_string(), c.detail.clone()]);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    t.row([format!("{} checks, {failed} failed", checks.len())]);
    let j = json!({
        "checks": checks.iter().map(|c| json!({"check": c.name, "input": c.subject, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        "all_pass": all,
    });
    let mut out = Output::new(t, j);
    out.success = all;
    Ok(out)
}
