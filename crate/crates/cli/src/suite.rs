//! `verify all`: the full battery on the built-in instances.

use serde_json::{json, Value};

use qnil::dcb::dcb_slice;
use qnil::finitetype::verify_theta_star;
use qnil::minors::verify_tsystem_twist;
use qnil::pbw::{inverse_norm, PbwChart};
use qnil::rootdata::{word_to_json, CartanDatum};
use qnil::twist::{reverse_coeff_table, verify_dcb_twist};
use qnil::uqfull::QuantumGroup;
use qnil::uqminus::FElement;
use qnil::RatFunc;

use crate::commands::{admissible_pairs, cofinite_all, minor_twist_all, Failure, Report};
use crate::config::Options;

fn group(name: &str) -> Result<QuantumGroup, Failure> {
    Ok(QuantumGroup::new(CartanDatum::builtin(name)?))
}

const CHARTS: [(&str, &[usize]); 3] = [("A2", &[0, 1, 0]), ("B2", &[0, 1, 0, 1]), ("A3", &[0, 1, 0, 2, 1, 0])];

fn orthogonality(cap: i64) -> Result<(bool, Value), Failure> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (ty, w) in CHARTS {
        let qg = group(ty)?;
        let chart = PbwChart::new(&qg, w)?;
        let mut pairs = 0usize;
        for nu in chart.weights_up_to(cap.min(6)) {
            let labels = chart.compositions(&nu);
            for a in &labels {
                for b in &labels {
                    let v = qg.form_l(&chart.f_low(&qg, a)?, &chart.f_low(&qg, b)?);
                    let expect = if a == b { inverse_norm(&qg, w, a).inv()? } else { RatFunc::zero() };
                    ok &= v == expect;
                    pairs += 1;
                }
            }
        }
        rows.push(json!({"cartan": ty, "word": word_to_json(w), "pairs": pairs}));
    }
    Ok((ok, json!(rows)))
}

fn dcb_characterization(cap: i64) -> Result<(bool, Value), Failure> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (ty, w) in CHARTS {
        let qg = group(ty)?;
        let chart = PbwChart::new(&qg, w)?;
        let mut n = 0usize;
        for nu in chart.weights_up_to(cap.min(5)) {
            // dcb_slice asserts σ-invariance and the qZ[q] condition itself
            let s = dcb_slice(&qg, &chart, &nu)?;
            for (a, row) in s.pmatrix.iter().enumerate() {
                ok &= row[a].is_one();
                ok &= row[..a].iter().all(|x| x.is_zero() || x.min_exp().unwrap() >= 1);
                ok &= qg.sigma(&s.elements[a])? == s.elements[a];
            }
            n += s.labels.len();
        }
        rows.push(json!({"cartan": ty, "elements": n}));
    }
    let qg = group("A2")?;
    let chart = PbwChart::new(&qg, &[0, 1, 0])?;
    let s = dcb_slice(&qg, &chart, &[1, 1])?;
    let d = &RatFunc::one() - &RatFunc::q_pow(2);
    let g010 = FElement::word(&[1, 0]).sub(&FElement::word(&[0, 1]).scale(&RatFunc::q_pow(1))).scale(&d);
    let g101 = FElement::word(&[0, 1]).sub(&FElement::word(&[1, 0]).scale(&RatFunc::q_pow(1))).scale(&d);
    let pinned = qg.f_equal(&s.elements[0], &g010)
        && qg.f_equal(&s.elements[1], &g101)
        && s.pmatrix[1][0] == -&qnil::LaurentPoly::q_pow(1);
    Ok((ok && pinned, json!({"slices": rows, "pinned": pinned})))
}

/// A longest word and two proper prefixes of (possibly another) reduced
/// word of w₀. The B2 prefixes come from (2,1,2,1): those of (1,2,1,2)
/// send height 5 slices to weights far too tall to handle.
pub fn words_for(ty: &str) -> Vec<Vec<usize>> {
    match ty {
        "A2" => vec![vec![0, 1, 0], vec![0], vec![0, 1]],
        "B2" => vec![vec![0, 1, 0, 1], vec![1, 0], vec![1, 0, 1]],
        _ => vec![vec![0, 1, 0, 2, 1, 0], vec![0, 1, 0], vec![0, 1, 0, 2, 1]],
    }
}

fn twist_theorem(cap: i64, revlex: bool) -> Result<(bool, Value), Failure> {
    let mut ok = true;
    let mut rows = Vec::new();
    for ty in ["A2", "B2", "A3"] {
        let qg = group(ty)?;
        for w in words_for(ty) {
            let chart = PbwChart::new(&qg, &w)?;
            let mut n = 0usize;
            for nu in chart.weights_up_to(cap.min(5)) {
                if revlex {
                    ok &= reverse_coeff_table(&qg, &w, &nu)?.passed();
                } else {
                    ok &= verify_dcb_twist(&qg, &w, &nu)?.passed();
                }
                n += 1;
            }
            rows.push(json!({"cartan": ty, "word": word_to_json(&w), "slices": n}));
        }
    }
    Ok((ok, json!(rows)))
}

fn minor_twist() -> Result<(bool, Value), Failure> {
    let mut ok = true;
    let mut rows = Vec::new();
    for ty in ["A2", "B2"] {
        let (r, v) = minor_twist_all(&group(ty)?, 3)?;
        ok &= r;
        rows.push(json!({"cartan": ty, "report": v}));
    }
    Ok((ok, json!(rows)))
}

fn tsystem() -> Result<(bool, Value), Failure> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (ty, w) in [("A2", vec![0usize, 1, 0]), ("B2", vec![0, 1, 0, 1])] {
        let qg = group(ty)?;
        for (b, d) in admissible_pairs(&w) {
            let r = verify_tsystem_twist(&qg, &w, b, d, &[0, 1])?;
            ok &= r.passed();
            rows.push(json!({"cartan": ty, "b": b, "d": d, "A": r.original.a, "B": r.original.b_exp, "C": r.original.c, "passed": r.passed()}));
        }
    }
    Ok((ok, json!(rows)))
}

fn finite_type(cap: i64) -> Result<(bool, Value), Failure> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (ty, w) in CHARTS {
        let r = verify_theta_star(&group(ty)?, Some(w), 5, cap.min(5))?;
        ok &= r.passed();
        rows.push(json!({"cartan": ty, "monomials": r.monomials_checked, "slices": r.slices.len(), "passed": r.passed()}));
    }
    Ok((ok, json!(rows)))
}

fn structural() -> Result<(bool, Value), Failure> {
    let mut ok = true;
    let mut rows = Vec::new();
    for ty in ["A2", "B2", "G2"] {
        let qg = group(ty)?;
        let c = qg.cartan();
        let n = qg.rank();
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push(qg.e(i));
            gens.push(qg.f(i));
            gens.push(qg.t(i, 1));
        }
        let mut braid = true;
        for i in 0..n {
            for j in i + 1..n {
                let m = c.braid_order(i, j);
                let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
                let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
                for g in &gens {
                    braid &= qg.braid_word(&w1, 1, g) == qg.braid_word(&w2, 1, g);
                }
            }
        }
        let mut inverse = true;
        let mut lemma = true;
        for i in 0..n {
            for g in &gens {
                inverse &= &qg.braid(i, -1, &qg.braid(i, 1, g)) == g;
                let sv = |x: &qnil::uqfull::UqElement| qg.antipode(&qg.vee(x));
                lemma &= qg.braid(i, 1, &sv(g)) == sv(&qg.braid(i, -1, g));
            }
        }
        let mut serre = true;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = 1 - c.a(i, j);
                let mut x = FElement::zero();
                for r in 0..=m {
                    let mut w = vec![i as u8; r as usize];
                    w.push(j as u8);
                    w.extend(std::iter::repeat_n(i as u8, (m - r) as usize));
                    let coeff = qnil::qbinom(m, r, c.d(i)).to_ratfunc();
                    let coeff = if r % 2 == 1 { -&coeff } else { coeff };
                    x = x.add(&FElement::word(&w).scale(&coeff));
                }
                serre &= qg.f_is_zero(&x) && qg.reduce(&qg.lift(&x)).is_zero();
            }
        }
        let mut sigma = true;
        let mut form = true;
        let words: Vec<Vec<u8>> = (0..n as u8).flat_map(|a| (0..n as u8).map(move |b| vec![a, b])).collect();
        for x in &words {
            let fx = FElement::word(x);
            sigma &= qg.sigma(&qg.sigma(&fx)?)? == qg.f_reduce(&fx);
            for y in &words {
                let fy = FElement::word(y);
                let nx = fx.weight(n).unwrap();
                let ny = fy.weight(n).unwrap();
                let s = qg.sigma(&qg.f_mul(&fx, &fy))?;
                let rhs = qg.f_mul(&qg.sigma(&fy)?, &qg.sigma(&fx)?).scale(&RatFunc::q_pow(c.root_pair(&nx, &ny)));
                sigma &= qg.f_equal(&s, &rhs);
                form &= qg.form_l(&fx, &fy) == qg.form_l(&fy, &fx);
                form &= qg.form_l(&fx, &fy) == qg.form_l(&fx.star(), &fy.star());
            }
        }
        ok &= braid && inverse && lemma && serre && sigma && form;
        rows.push(json!({
            "cartan": ty, "braid": braid, "inverse": inverse, "antipode_lemma": lemma,
            "serre": serre, "sigma": sigma, "form": form,
        }));
    }
    Ok((ok, json!(rows)))
}

pub fn run(opts: &Options) -> Result<Report, Failure> {
    let cap = opts.height(6)?;
    let mut items = Vec::new();
    let mut all = true;
    let mut push = |name: &str, r: (bool, Value)| {
        all &= r.0;
        items.push(json!({"criterion": name, "passed": r.0, "detail": r.1}));
    };
    push("pbw orthogonality", orthogonality(cap)?);
    push("dual canonical basis", dcb_characterization(cap)?);
    push("twist on dual canonical basis", twist_theorem(cap, false)?);
    push("reverse-lex coefficients", twist_theorem(cap, true)?);
    push("minor twist", minor_twist()?);
    push("quantum T-system", tsystem()?);
    let (r, v) = cofinite_all(&group("A2")?, &[0], cap.min(4))?;
    push("cofinite part", (r, v));
    push("finite type", finite_type(cap)?);
    push("structural", structural()?);
    Ok(Report { command: "verify all".into(), passed: all, result: json!(items) })
}
