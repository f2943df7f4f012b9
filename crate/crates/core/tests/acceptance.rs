//! The nine acceptance criteria, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qnil::dcb::{dcb_slice, low_coefficients};
use qnil::finitetype::{longest_word, verify_theta_star};
use qnil::minors::{verify_minor_twist, verify_tsystem, verify_tsystem_twist, MinorSpec};
use qnil::pbw::{inverse_norm, PbwChart};
use qnil::rootdata::CartanDatum;
use qnil::twist::{cofinite_twist_check, reverse_coeff_table, theta_inverse, verify_dcb_twist};
use qnil::uqfull::{QuantumGroup, UqElement};
use qnil::uqminus::FElement;
use qnil::{qbinom, LaurentPoly, RatFunc};

type Outcome = Result<String, String>;

fn qg(name: &str) -> QuantumGroup {
    QuantumGroup::new(CartanDatum::builtin(name).unwrap())
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn one_minus_q2() -> RatFunc {
    &RatFunc::one() - &RatFunc::q_pow(2)
}

fn f(w: &[u8]) -> FElement {
    FElement::word(w)
}

const CHARTS: [(&str, &[usize]); 3] = [("A2", &[0, 1, 0]), ("B2", &[0, 1, 0, 1]), ("A3", &[0, 1, 0, 2, 1, 0])];

fn norm_orthogonality() -> Outcome {
    let mut pairs = 0;
    for (ty, w) in CHARTS {
        let g = qg(ty);
        let ch = e(PbwChart::new(&g, w))?;
        for nu in ch.weights_up_to(6) {
            let labels = ch.compositions(&nu);
            for a in &labels {
                let fa = e(ch.f_low(&g, a))?;
                for b in &labels {
                    let v = g.form_l(&fa, &e(ch.f_low(&g, b))?);
                    let expect = if a == b { e(inverse_norm(&g, w, a).inv())? } else { RatFunc::zero() };
                    check(v == expect, || format!("{ty} {a:?} {b:?}: {v}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn dcb_characterization() -> Outcome {
    let mut n = 0;
    for (ty, w) in CHARTS {
        let g = qg(ty);
        let ch = e(PbwChart::new(&g, w))?;
        for nu in ch.weights_up_to(5) {
            let s = e(dcb_slice(&g, &ch, &nu))?;
            for (a, row) in s.pmatrix.iter().enumerate() {
                check(row[a].is_one(), || format!("{ty} {nu:?} diagonal"))?;
                check(row[..a].iter().all(|x| x.is_zero() || x.in_q_zq()), || format!("{ty} {nu:?} row {a}"))?;
                check(row[a + 1..].iter().all(|x| x.is_zero()), || format!("{ty} {nu:?} not triangular"))?;
                check(e(g.sigma(&s.elements[a]))? == s.elements[a], || format!("{ty} {nu:?} σ"))?;
                n += 1;
            }
        }
    }
    let g = qg("A2");
    let ch = e(PbwChart::new(&g, &[0, 1, 0]))?;
    let s = e(dcb_slice(&g, &ch, &[1, 1]))?;
    let d = one_minus_q2();
    let g010 = f(&[1, 0]).sub(&f(&[0, 1]).scale(&RatFunc::q_pow(1))).scale(&d);
    let g101 = f(&[0, 1]).sub(&f(&[1, 0]).scale(&RatFunc::q_pow(1))).scale(&d);
    check(s.labels == vec![vec![0, 1, 0], vec![1, 0, 1]], || "A2 labels".into())?;
    check(g.f_equal(&s.elements[0], &g010) && g.f_equal(&s.elements[1], &g101), || "A2 pinned G^up".into())?;
    check(s.pmatrix[1][0] == -&LaurentPoly::q_pow(1), || format!("A2 P entry {:?}", s.pmatrix[1][0]))?;
    Ok(format!("{n} elements, A2 pinned slice exact"))
}

/// w₀ and two proper prefixes of a reduced word of w₀.
fn twist_words(ty: &str) -> Vec<Vec<usize>> {
    match ty {
        "A2" => vec![vec![0, 1, 0], vec![0], vec![0, 1]],
        "B2" => vec![vec![0, 1, 0, 1], vec![1, 0], vec![1, 0, 1]],
        _ => vec![vec![0, 1, 0, 2, 1, 0], vec![0, 1, 0], vec![0, 1, 0, 2, 1]],
    }
}

fn dcb_twist() -> Outcome {
    let mut n = 0;
    for ty in ["A2", "B2", "A3"] {
        let g = qg(ty);
        for w in twist_words(ty) {
            let ch = e(PbwChart::new(&g, &w))?;
            for nu in ch.weights_up_to(5) {
                let r = e(verify_dcb_twist(&g, &w, &nu))?;
                check(r.passed(), || format!("{ty} {w:?} {nu:?}"))?;
                n += r.entries.len();
            }
        }
    }
    Ok(format!("{n} elements over 9 charts"))
}

fn right_lex() -> Outcome {
    let mut n = 0;
    for ty in ["A2", "B2", "A3"] {
        let g = qg(ty);
        for w in twist_words(ty) {
            let ch = e(PbwChart::new(&g, &w))?;
            for nu in ch.weights_up_to(5) {
                let t = e(reverse_coeff_table(&g, &w, &nu))?;
                check(t.reversal_ok, || format!("{ty} {w:?} {nu:?} reversal"))?;
                check(t.support_ok, || format!("{ty} {w:?} {nu:?} support"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} slices"))
}

fn minor_twist() -> Outcome {
    let mut n = 0;
    for ty in ["A2", "B2"] {
        let g = qg(ty);
        let c = g.cartan();
        let w0 = e(longest_word(c))?;
        let elems = c.elements_up_to(3);
        for i in 0..c.rank() {
            let lam = c.fundamental(i);
            for u1 in &elems {
                for u2 in &elems {
                    if MinorSpec::lowest(lam.clone(), u1, u2).nu(c).is_err() {
                        continue;
                    }
                    let r = e(verify_minor_twist(&g, &lam, u1, u2, &w0))?;
                    check(r.passed(), || format!("{ty} ϖ{} {u1:?} {u2:?}", i + 1))?;
                    n += 1;
                }
            }
        }
    }
    let g = qg("A2");
    let d = one_minus_q2();
    let img = e(theta_inverse(&g, &[0, 1, 0], &f(&[0]).scale(&d)))?;
    check(g.f_equal(&img, &f(&[1]).scale(&d)), || format!("pinned Θ_w₀((1−q²)f₁) = {img:?}"))?;
    Ok(format!("{n} instances, pinned Θ_w₀ value exact"))
}

fn tsystem() -> Outcome {
    let mut n = 0;
    for (ty, w) in [("A2", vec![0usize, 1, 0]), ("B2", vec![0, 1, 0, 1])] {
        let g = qg(ty);
        for b in 1..=w.len() {
            for d in b + 1..=w.len() {
                if w[b - 1] != w[d - 1] {
                    continue;
                }
                let r = e(verify_tsystem(&g, &w, b, d, &[0, 1]))?;
                check(r.holds1 && r.holds2, || format!("{ty} ({b},{d})"))?;
                let t = e(verify_tsystem_twist(&g, &w, b, d, &[0, 1]))?;
                check(t.passed(), || format!("{ty} ({b},{d}) twist"))?;
                n += 1;
            }
        }
    }
    let g = qg("A2");
    let r = e(verify_tsystem(&g, &[0, 1, 0], 1, 3, &[0, 1]))?;
    check((r.a, r.b_exp, r.c) == (-1, 0, 0), || format!("A2 exponents {:?}", (r.a, r.b_exp, r.c)))?;
    let d = one_minus_q2();
    let expect = [
        f(&[0]).scale(&d),
        f(&[1]).scale(&d),
        FElement::one(),
        f(&[0, 1]).sub(&f(&[1, 0]).scale(&RatFunc::q_pow(1))).scale(&d),
    ];
    for (m, x) in r.minors.iter().zip(&expect) {
        check(g.f_equal(&m.value, x), || format!("A2 minor D({},{})", m.label.0, m.label.1))?;
    }
    let d02 = f(&[1, 0]).sub(&f(&[0, 1]).scale(&RatFunc::q_pow(1))).scale(&d);
    check(r.product.len() == 1 && g.f_equal(&r.product[0].value, &d02), || "A2 D(0,2)".into())?;
    Ok(format!("{n} admissible pairs, A2 (1,3) pinned"))
}

fn cofinite() -> Outcome {
    let g = qg("A2");
    let w = [0usize];
    let ch = e(PbwChart::new(&g, &[0, 1, 0]))?;
    let mut n = 0;
    let mut pinned = false;
    for nu in ch.weights_up_to(4) {
        let s = e(dcb_slice(&g, &ch, &nu))?;
        for x in &s.elements {
            if g.braid_word(&w, -1, &g.lift(x)).to_fminus().is_none() {
                continue;
            }
            let r = e(cofinite_twist_check(&g, &w, x, &ch))?;
            check(r.passed(), || format!("{nu:?} {x:?}"))?;
            if g.f_equal(x, &f(&[1]).scale(&one_minus_q2())) {
                pinned = r.beta == vec![1, 1] && (r.sign, r.q_exponent) == (1, -1);
            }
            n += 1;
        }
    }
    check(pinned, || "pinned (1−q²)f₂: β = α₁+α₂, scalar q^-1".into())?;
    Ok(format!("{n} elements, pinned scalar q^-1"))
}

fn finite_type() -> Outcome {
    let mut n = 0;
    for (ty, w) in CHARTS {
        let r = e(verify_theta_star(&qg(ty), Some(w), 5, 5))?;
        check(r.passed(), || format!("{ty}: {:?}", r.monomial_failures))?;
        n += r.monomials_checked;
    }
    let g = qg("A2");
    let ch = e(PbwChart::new(&g, &[0, 1, 0]))?;
    let s = e(dcb_slice(&g, &ch, &[1, 1]))?;
    let m = low_coefficients(&s);
    check(m[0][1] == LaurentPoly::q_pow(1), || format!("pinned coefficient {:?}", m[0][1]))?;
    Ok(format!("{n} monomials, pinned coefficient q"))
}

/// Random element of U_q: a short sum of products of generators.
fn random_element(g: &QuantumGroup, rng: &mut ChaCha8Rng, len: usize) -> UqElement {
    let n = g.rank();
    let mut x = UqElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let gens: Vec<UqElement> = (0..rng.gen_range(0..=len))
            .map(|_| {
                let i = rng.gen_range(0..n);
                match rng.gen_range(0..3) {
                    0 => g.e(i),
                    1 => g.f(i),
                    _ => g.t(i, if rng.gen_bool(0.5) { 1 } else { -1 }),
                }
            })
            .collect();
        let refs: Vec<&UqElement> = gens.iter().collect();
        let k = &RatFunc::from_int(rng.gen_range(1..=3)) * &RatFunc::q_pow(rng.gen_range(-2..=2));
        x = x.add(&g.mul_all(&refs).scale(&k));
    }
    x
}

fn random_fword(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Vec<u8> {
    (0..rng.gen_range(0..=len)).map(|_| rng.gen_range(0..rank) as u8).collect()
}

fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut samples = 0;
    for ty in ["A2", "B2", "G2"] {
        let g = qg(ty);
        let c = g.cartan();
        let m = c.braid_order(0, 1);
        let w1: Vec<usize> = (0..m).map(|k| k % 2).collect();
        let w2: Vec<usize> = (0..m).map(|k| 1 - k % 2).collect();
        let len = if ty == "G2" { 1 } else { 2 };
        let sv = |x: &UqElement| g.antipode(&g.vee(x));
        for _ in 0..8 {
            let x = random_element(&g, &mut rng, len);
            let i = rng.gen_range(0..2);
            check(g.braid_word(&w1, 1, &x) == g.braid_word(&w2, 1, &x), || format!("{ty} braid"))?;
            check(g.braid(i, -1, &g.braid(i, 1, &x)) == x, || format!("{ty} T_i^-1 T_i"))?;
            check(g.braid(i, 1, &sv(&x)) == sv(&g.braid(i, -1, &x)), || format!("{ty} T_i S ∨"))?;
            samples += 1;
        }
        for i in 0..2 {
            let j = 1 - i;
            let mm = 1 - c.a(i, j);
            let mut s = FElement::zero();
            for r in 0..=mm {
                let mut w = vec![i as u8; r as usize];
                w.push(j as u8);
                w.extend(std::iter::repeat_n(i as u8, (mm - r) as usize));
                let k = qbinom(mm, r, c.d(i)).to_ratfunc();
                s = s.add(&f(&w).scale(&if r % 2 == 1 { -&k } else { k }));
            }
            check(g.f_is_zero(&s), || format!("{ty} Serre ({i},{j})"))?;
        }
        for _ in 0..12 {
            let a = random_fword(&mut rng, 2, 3);
            let b = random_fword(&mut rng, 2, 3);
            let (x, y) = (f(&a), f(&b));
            check(g.f_equal(&e(g.sigma(&e(g.sigma(&x))?))?, &x), || format!("{ty} σ² on {a:?}"))?;
            let k = c.root_pair(&x.weight(2).unwrap(), &y.weight(2).unwrap());
            let lhs = e(g.sigma(&g.f_mul(&x, &y)))?;
            let rhs = g.f_mul(&e(g.sigma(&y))?, &e(g.sigma(&x))?).scale(&RatFunc::q_pow(k));
            check(g.f_equal(&lhs, &rhs), || format!("{ty} σ(xy) on {a:?} {b:?}"))?;
            let mut perm = a.clone();
            perm.reverse();
            let z = f(&perm);
            check(g.form_l(&x, &z) == g.form_l(&z, &x), || format!("{ty} form symmetry"))?;
            check(g.form_l(&x, &z) == g.form_l(&x.star(), &z.star()), || format!("{ty} ∗-invariance"))?;
            samples += 1;
        }
    }
    Ok(format!("{samples} seeded samples"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("PBW norm orthogonality", norm_orthogonality),
        ("dual canonical basis characterization", dcb_characterization),
        ("twist permutes the dual canonical basis", dcb_twist),
        ("right-lex coefficient reversal", right_lex),
        ("minor twist", minor_twist),
        ("quantum T-system and its twist", tsystem),
        ("cofinite twist", cofinite),
        ("finite type θ∘∗ = Θ_w₀", finite_type),
        ("structural identities", structural),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {}: PASS  {name} ({msg}; {secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
