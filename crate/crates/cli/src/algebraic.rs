//! Subcommands over spinors and 4×4 candidates, generic over the arithmetic mode.

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};
use spinor_forge::bilinear::{bilinears, fpk_residuals, BilinearSet, Spinor};
use spinor_forge::json::{
    beta_map_to_json, bilinears_from_json, bilinears_to_json, candidate_to_json, scalar_to_json, spinor_to_json,
    JsonReal,
};
use spinor_forge::lounesto::{classify_detailed, sample_class, ClassifierConfig, LounestoClass, DEFAULT_NULL_TOL};
use spinor_forge::symmetry::{
    beta_extract, compose, group_check, inverse, preserves_class, verify_rescaling_lemma, BetaMap, SymmetryCandidate,
};
use spinor_forge::Error;

use crate::args::{Command, Format, Global};
use crate::input;
use crate::output::{cell, write_csv, write_json};

/// Float tolerance for matrix and rescaling-map comparisons.
const MATRIX_TOL: f64 = 1e-10;
const DEFAULT_SAMPLES: usize = 100;
const DEFAULT_DRAWS: usize = 10;

pub fn run<R: JsonReal>(cmd: &Command, g: &Global) -> Result<bool> {
    match cmd {
        Command::Classify(a) => classify_cmd::<R>(&a.spinor, g),
        Command::Bilinears(a) => bilinears_cmd::<R>(&a.spinor, g),
        Command::Fpk(a) => match (&a.spinor, &a.aggregate) {
            (Some(s), _) => fpk_spinor::<R>(s, g),
            (None, Some(agg)) => fpk_aggregate::<R>(agg, g),
            (None, None) => bail!("fpk needs --spinor or --aggregate"),
        },
        Command::SymmetryCheck(a) => {
            let mut s = input::candidate::<R>("--matrix", &a.candidate.matrix)?;
            s.antilinear |= a.candidate.antilinear;
            symmetry_check(&s, a.class, g)
        }
        Command::SymmetryCompose(a) => {
            let list = candidates::<R>(&a.matrices)?;
            compose_cmd(&list, g)
        }
        Command::SymmetryInvert(a) => {
            let mut s = input::candidate::<R>("--matrix", &a.candidate.matrix)?;
            s.antilinear |= a.candidate.antilinear;
            invert_cmd(&s, g)
        }
        Command::GroupCheck(a) => {
            let list = candidates::<R>(&a.generators.matrices)?;
            group_cmd(&list, a.max_word_length, g)
        }
        Command::Sample(a) => sample_cmd::<R>(a.class, g),
        Command::Evolve(_) | Command::ExoticEvolve(_) => unreachable!("dynamics commands are dispatched separately"),
    }
}

fn candidates<R: JsonReal>(args: &[String]) -> Result<Vec<SymmetryCandidate<R>>> {
    args.iter().map(|m| input::candidate("--matrix", m)).collect()
}

fn matrix_tol<R: JsonReal>(g: &Global) -> f64 {
    if R::is_exact() {
        0.0
    } else {
        g.tol.unwrap_or(MATRIX_TOL)
    }
}

fn classifier<R: JsonReal>(g: &Global) -> Result<ClassifierConfig> {
    if R::is_exact() {
        Ok(ClassifierConfig::exact())
    } else {
        ClassifierConfig::float(g.tol.unwrap_or(DEFAULT_NULL_TOL)).map_err(|e| anyhow!("--tol: {e}"))
    }
}

fn emit(g: &Global, items: Vec<Value>, is_list: bool) -> Result<()> {
    let v = if is_list { Value::Array(items) } else { items.into_iter().next().unwrap_or(Value::Null) };
    write_json(g.out.as_deref(), &v)
}

fn fpk_max<R: JsonReal>(b: &BilinearSet<R>) -> R {
    fpk_residuals(b).max_abs()
}

fn classify_cmd<R: JsonReal>(arg: &str, g: &Global) -> Result<bool> {
    let cfg = classifier::<R>(g)?;
    let (list, is_list) = input::spinors::<R>("--spinor", arg, g.seed)?;
    let mut passed = true;
    let mut items = Vec::with_capacity(list.len());
    let mut rows = Vec::new();
    for (i, psi) in list.iter().enumerate() {
        match classify_detailed(psi, &cfg) {
            Ok(c) => {
                let p = c.pattern;
                rows.push(vec![
                    i.to_string(),
                    c.class.value().to_string(),
                    c.class.name().to_owned(),
                    p.k_null.to_string(),
                    p.s_null.to_string(),
                    p.omega_null.to_string(),
                    p.sigma_null.to_string(),
                ]);
                items.push(json!({
                    "class": c.class.value(),
                    "name": c.class.name(),
                    "singular": c.class.is_singular(),
                    "pattern": p,
                    "bilinears": bilinears_to_json(&c.bilinears, &fpk_max(&c.bilinears)),
                }));
            }
            Err(Error::UnknownPattern(p)) => {
                passed = false;
                rows.push(vec![
                    i.to_string(),
                    String::new(),
                    String::new(),
                    p.k_null.to_string(),
                    p.s_null.to_string(),
                    p.omega_null.to_string(),
                    p.sigma_null.to_string(),
                ]);
                items.push(json!({"class": null, "pattern": p, "error": Error::UnknownPattern(p).to_string()}));
            }
            Err(e) => bail!("--spinor{}: {e}", if is_list { format!(" entry {i}") } else { String::new() }),
        }
    }
    match g.format {
        Format::Json => emit(g, items, is_list)?,
        Format::Csv => {
            let header = ["index", "class", "name", "k_null", "s_null", "omega_null", "sigma_null"].map(String::from);
            write_csv(g.out.as_deref(), &header, &rows)?;
        }
    }
    Ok(passed)
}

fn bilinears_cmd<R: JsonReal>(arg: &str, g: &Global) -> Result<bool> {
    let (list, is_list) = input::spinors::<R>("--spinor", arg, g.seed)?;
    let sets = list.iter().map(bilinears).collect::<Result<Vec<_>, _>>()?;
    match g.format {
        Format::Json => emit(g, sets.iter().map(|b| bilinears_to_json(b, &fpk_max(b))).collect(), is_list)?,
        Format::Csv => {
            let mut header: Vec<String> = ["index", "sigma", "omega"].map(String::from).to_vec();
            header.extend((0..4).map(|m| format!("J{m}")));
            header.extend((0..4).map(|m| format!("K{m}")));
            header.extend(["S01", "S02", "S03", "S12", "S13", "S23"].map(String::from));
            let rows: Vec<Vec<String>> = sets
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let mut r = vec![i.to_string(), cell(&b.sigma), cell(&b.omega)];
                    r.extend(b.j.iter().map(cell));
                    r.extend(b.k.iter().map(cell));
                    r.extend([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].iter().map(|&(m, n)| cell(&b.s[m][n])));
                    r
                })
                .collect();
            write_csv(g.out.as_deref(), &header, &rows)?;
        }
    }
    Ok(true)
}

/// Residual summary; float residuals are judged relative to `J₀²`.
fn fpk_report<R: JsonReal>(b: &BilinearSet<R>, g: &Global) -> (Value, bool) {
    let r = fpk_residuals(b);
    let max = r.max_abs();
    let (pass, tol) = if R::is_exact() {
        (r.is_zero(), Value::Null)
    } else {
        let tol = g.tol.unwrap_or(DEFAULT_NULL_TOL) * b.j[0].as_f64().powi(2).max(1.0);
        (max.as_f64() <= tol, json!(tol))
    };
    let v = json!({
        "max_residual": max.to_json(),
        "antisymmetric_max": r.max_r1().to_json(),
        "jj_plus_kk": r.r2a.to_json(),
        "j_dot_k": r.r2b.to_json(),
        "jj_minus_sigma2_omega2": r.r3.to_json(),
        "tolerance": tol,
        "pass": pass,
    });
    (v, pass)
}

fn fpk_spinor<R: JsonReal>(arg: &str, g: &Global) -> Result<bool> {
    let (list, is_list) = input::spinors::<R>("--spinor", arg, g.seed)?;
    let mut all = true;
    let mut items = Vec::with_capacity(list.len());
    for psi in &list {
        let (v, pass) = fpk_report(&bilinears(psi)?, g);
        all &= pass;
        items.push(v);
    }
    emit(g, items, is_list)?;
    Ok(all)
}

fn fpk_aggregate<R: JsonReal>(arg: &str, g: &Global) -> Result<bool> {
    let v = input::json_arg("--aggregate", arg)?;
    let (b, _) = bilinears_from_json::<R>(&v).map_err(|e| anyhow!("--aggregate: {e}"))?;
    let (report, pass) = fpk_report(&b, g);
    write_json(g.out.as_deref(), &report)?;
    Ok(pass)
}

fn beta_json<R: JsonReal>(r: &Result<BetaMap<R>, Error>) -> (Value, Value) {
    match r {
        Ok(b) => (beta_map_to_json(b), Value::Null),
        Err(e) => (Value::Null, json!(e.to_string())),
    }
}

fn symmetry_check<R: JsonReal>(s: &SymmetryCandidate<R>, class: Option<u8>, g: &Global) -> Result<bool> {
    let cfg = classifier::<R>(g)?;
    let n = g.n.unwrap_or(DEFAULT_SAMPLES);
    let classes = match class {
        Some(c) => vec![LounestoClass::new(c)?],
        None => LounestoClass::ALL.to_vec(),
    };
    let mut pass = true;
    let mut reports = Vec::with_capacity(classes.len());
    for c in classes {
        let r = preserves_class(s, c, n, g.seed, &cfg)?;
        pass &= r.pass;
        let counterexamples: Vec<Value> = r
            .counterexamples
            .iter()
            .map(|x| {
                json!({
                    "input": spinor_to_json(&x.input),
                    "output": spinor_to_json(&x.output),
                    "got": x.got.map(LounestoClass::value),
                    "fpk_violated": x.fpk_violated,
                })
            })
            .collect();
        reports.push(json!({
            "class": r.class.value(),
            "samples": r.samples,
            "preserved": r.preserved,
            "discarded_zero_current": r.discarded_zero_current,
            "fpk_violations": r.fpk_violations,
            "failures": r.failures,
            "pass": r.pass,
            "counterexamples": counterexamples,
        }));
    }
    let (beta, beta_error) = beta_json(&beta_extract(s));
    let (lemma, lemma_error) = match verify_rescaling_lemma(s) {
        Ok(l) => (
            json!({
                "alpha": l.alpha.to_json(),
                "beta": l.beta.to_json(),
                "holds": l.holds,
                "det_lhs": scalar_to_json(&l.det_lhs),
                "det_rhs": scalar_to_json(&l.det_rhs),
                "relation_holds": l.relation_holds,
            }),
            Value::Null,
        ),
        Err(e) => (Value::Null, json!(e.to_string())),
    };
    let v = json!({
        "candidate": candidate_to_json(s),
        "samples_per_class": n,
        "seed": g.seed,
        "pass": pass,
        "classes": reports,
        "beta": beta,
        "beta_error": beta_error,
        "lemma": lemma,
        "lemma_error": lemma_error,
    });
    write_json(g.out.as_deref(), &v)?;
    Ok(pass)
}

fn compose_cmd<R: JsonReal>(list: &[SymmetryCandidate<R>], g: &Global) -> Result<bool> {
    let product = list[1..].iter().fold(list[0].clone(), |acc, s| compose(&acc, s));
    let composite = beta_extract(&product);
    let factors: Result<Vec<BetaMap<R>>, Error> = list.iter().map(beta_extract).collect();
    let (multiplicative, deviation) = match (&composite, &factors) {
        (Ok(c), Ok(f)) => {
            let expected = f[1..].iter().fold(f[0].clone(), |acc, b| acc.then(b));
            let ok = c.approx_eq(&expected, matrix_tol::<R>(g));
            (json!(ok), json!(c.max_abs_diff(&expected)))
        }
        _ => (Value::Null, Value::Null),
    };
    let (beta, beta_error) = beta_json(&composite);
    let v = json!({
        "result": candidate_to_json(&product),
        "beta": beta,
        "beta_error": beta_error,
        "beta_multiplicative": multiplicative,
        "max_beta_deviation": deviation,
    });
    write_json(g.out.as_deref(), &v)?;
    Ok(multiplicative != json!(false))
}

fn invert_cmd<R: JsonReal>(s: &SymmetryCandidate<R>, g: &Global) -> Result<bool> {
    let inv = match inverse(s) {
        Ok(inv) => inv,
        Err(Error::SingularMatrix) => {
            write_json(g.out.as_deref(), &json!({"invertible": false, "inverse": null}))?;
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let tol = matrix_tol::<R>(g);
    let identity = SymmetryCandidate::new(spinor_forge::algebra::Matrix4::identity());
    let round_trip = compose(s, &inv).approx_eq(&identity, tol) && compose(&inv, s).approx_eq(&identity, tol);
    let reciprocal = match (beta_extract(s), beta_extract(&inv)) {
        (Ok(b), Ok(bi)) => match b.inverse() {
            Some(expected) => json!(bi.approx_eq(&expected, tol)),
            None => json!(false),
        },
        _ => Value::Null,
    };
    let v = json!({
        "invertible": true,
        "inverse": candidate_to_json(&inv),
        "round_trip": round_trip,
        "beta_reciprocal": reciprocal,
    });
    write_json(g.out.as_deref(), &v)?;
    Ok(round_trip && reciprocal != json!(false))
}

fn group_cmd<R: JsonReal>(gens: &[SymmetryCandidate<R>], max_len: usize, g: &Global) -> Result<bool> {
    let r = group_check(gens, max_len, matrix_tol::<R>(g), g.seed)?;
    let v = json!({
        "size": r.size(),
        "closed": r.closed,
        "inverses_present": r.inverses_present,
        "associative": r.associative,
        "triples_checked": r.triples_checked,
        "word_length": r.word_length,
        "is_group": r.is_group(),
        "elements": r.elements.iter().map(candidate_to_json).collect::<Vec<_>>(),
    });
    write_json(g.out.as_deref(), &v)?;
    Ok(r.is_group())
}

fn sample_cmd<R: JsonReal>(class: u8, g: &Global) -> Result<bool> {
    let class = LounestoClass::new(class)?;
    let n = g.n.unwrap_or(DEFAULT_DRAWS);
    let list: Vec<Spinor<R>> = (0..n as u64)
        .map(|i| sample_class(class, g.seed.wrapping_add(i)).map(|s| Spinor::from_exact(&s)))
        .collect::<Result<_, _>>()?;
    match g.format {
        Format::Json => write_json(g.out.as_deref(), &Value::Array(list.iter().map(spinor_to_json).collect()))?,
        Format::Csv => {
            let mut header = vec!["index".to_owned()];
            for k in 0..4 {
                header.push(format!("psi{k}_re"));
                header.push(format!("psi{k}_im"));
            }
            let rows: Vec<Vec<String>> = list
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let mut r = vec![i.to_string()];
                    for z in &s.0 {
                        r.push(cell(&z.re));
                        r.push(cell(&z.im));
                    }
                    r
                })
                .collect();
            write_csv(g.out.as_deref(), &header, &rows)?;
        }
    }
    Ok(true)
}
