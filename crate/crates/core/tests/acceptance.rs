//! Acceptance suite: one line per criterion.
//!
//! Set `EXSTAT_SLOW=1` to include the loop case with fusion group `Z2xZ2xZ2`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use exstat::*;
use exstat_linalg::{
    determinant, kernel_basis, same_lattice, snf, solve_integer, Integer, SparseIntMatrix,
    SparseVec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEC: Duration = Duration::from_secs(1);
const MIN: Duration = Duration::from_secs(60);

type Check = std::result::Result<String, String>;

fn model_g(
    spec: &str,
    group: &str,
    p: Option<i32>,
    gens: Option<&[GroupElement]>,
) -> ExcitationModel {
    let b = builtin_from_spec(spec).unwrap();
    let g: FiniteAbelianGroup = group.parse().unwrap();
    match b.geometry {
        Geometry::Simplicial(c) => {
            ExcitationModel::from_simplicial(&c, &g, p.unwrap_or(b.default_p), gens).unwrap()
        }
        Geometry::Graph(gr) => ExcitationModel::from_embedded_graph(&gr, &g, gens).unwrap(),
    }
}

fn model(spec: &str, group: &str) -> ExcitationModel {
    model_g(spec, group, None, None)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|x| x.to_string())
}

/// Computes `T` and `T_f` and compares both with `want` within `budget`.
fn golden(spec: &str, group: &str, want: &str, budget: Duration) -> Check {
    let t0 = Instant::now();
    let m = model(spec, group);
    let st = e(Statistics::new(&m))?;
    let r = e(st.compute())?;
    let dt = t0.elapsed();
    let line = format!("{spec} {group}: T={} T_f={} ({:.2?})", r.t, r.t_f, dt);
    ensure(r.t.to_string() == want && r.t_f.to_string() == want, || {
        format!("{line}, expected {want}")
    })?;
    ensure(dt <= budget, || {
        format!("{line}, over the {budget:?} budget")
    })?;
    Ok(line)
}

fn all(checks: Vec<Check>) -> Check {
    let mut parts = Vec::new();
    for c in checks {
        parts.push(c?);
    }
    Ok(parts.join("; "))
}

fn term(m: &ExcitationModel, label: &str, config: &str) -> Expression {
    let s = m.operator_by_label(label).unwrap();
    let a = expr::parse_config(config, m).unwrap();
    Expression::theta(s, a)
}

fn word(m: &ExcitationModel, text: &str, at: &str) -> Expression {
    let w = parse_process(text, m).unwrap();
    expand_theta(m, &w, expr::parse_config(at, m).unwrap()).0
}

fn one() -> Integer {
    Integer::from(1)
}

fn c1() -> Check {
    all(vec![
        golden("triangle", "Z2", "Z2", 5 * SEC),
        golden("triangle", "Z3", "Z3", 5 * SEC),
        golden("square", "Z2", "Z2", 5 * SEC),
    ])
}

fn c2() -> Check {
    all(vec![
        golden("centered-triangle", "Z2", "Z4", MIN),
        golden("centered-triangle", "Z3", "Z3", MIN),
        golden("centered-triangle", "Z2xZ2", "Z4xZ4xZ2", MIN),
    ])
}

fn c3() -> Check {
    let mut v = Vec::new();
    for spec in ["k5", "k33", "centered-tetrahedron-1skel"] {
        v.push(golden(spec, "Z2", "Z2", MIN));
        v.push(golden(spec, "Z3", "0", MIN));
    }
    all(v)
}

fn c4() -> Check {
    all(vec![
        golden("centered-tetrahedron-2skel", "Z2", "Z2", 10 * MIN),
        golden("centered-tetrahedron-2skel", "Z3", "0", 10 * MIN),
    ])
}

fn c5() -> Check {
    let single = golden("boundary-simplex:3", "Z2", "0", 5 * MIN)?;
    let t0 = Instant::now();
    let m = model("boundary-simplex:3", "Z2xZ2");
    let st = e(Statistics::new(&m))?;
    let r = e(st.compute())?;
    let dt = t0.elapsed();
    ensure(r.t == r.t_f, || {
        format!("T={} differs from T_f={}", r.t, r.t_f)
    })?;
    let found = r.t.to_string();
    let which = match found.as_str() {
        "Z2xZ2xZ2" => "matches the figure value Z2^3, not the text value Z2^2",
        "Z2xZ2" => "matches the text value Z2^2 = H^4(B(Z2xZ2),U(1)), not the figure value Z2^3",
        _ => return Err(format!("Z2xZ2 gives T={found}, neither Z2^3 nor Z2^2")),
    };
    ensure(dt <= 5 * MIN, || format!("Z2xZ2 took {dt:?}"))?;
    let mut line = format!("{single}; boundary-simplex:3 Z2xZ2: T={found} ({dt:.2?}), {which} [source conflict flagged]");
    if std::env::var_os("EXSTAT_SLOW").is_some() {
        line.push_str("; ");
        line.push_str(&golden(
            "boundary-simplex:3",
            "Z2xZ2xZ2",
            "Z2xZ2xZ2xZ2xZ2xZ2xZ2xZ2",
            Duration::from_secs(6 * 3600),
        )?);
    } else {
        line.push_str("; Z2xZ2xZ2 skipped (set EXSTAT_SLOW=1)");
    }
    Ok(line)
}

fn c6() -> Check {
    golden("boundary-simplex:4", "Z2", "Z2", 10 * MIN)
}

fn c7() -> Check {
    all(vec![
        golden("points:1", "Z2", "0", 5 * SEC),
        golden("points:2", "Z2", "0", 5 * SEC),
        golden("points:2", "Z2xZ2", "Z2", 5 * SEC),
        golden("points:3", "Z2xZ2", "0", 5 * SEC),
    ])
}

fn c8() -> Check {
    all(vec![
        golden("double-arc-chain", "Z2", "Z2", MIN),
        golden("double-y-graph", "Z2", "Z2xZ2xZ2", MIN),
    ])
}

fn c9() -> Check {
    let m = model("triangle", "Z2");
    let st = e(Statistics::new(&m))?;
    let (s1, s2) = (0, 1);
    let ex = word(&m, "[U2, U1^2]", "[0,0,0]");
    let d1 = m.boundary_config(s1);
    let d2 = m.boundary_config(s2);
    let four = Expression::theta(s1, 0)
        .add(&Expression::theta(s1, d1))
        .sub(&Expression::theta(s1, d2))
        .sub(&Expression::theta(s1, m.config_add(d1, d2)));
    ensure(ex == four, || {
        "expansion differs from the four-term expression".into()
    })?;
    let o = e(st.order_of(&ex))?;
    ensure(o == Integer::from(2), || format!("order {o}"))?;
    Ok(format!(
        "θ([s2,s1^2],0) has 4 terms, norm {}, order {o}",
        ex.norm1()
    ))
}

fn theta_t_junction(m: &ExcitationModel) -> Expression {
    word(
        m,
        "U[0,2] U[0,3]^-1 U[0,1] U[0,2]^-1 U[0,3] U[0,1]^-1",
        "[0,1,1,0]",
    )
}

fn c10() -> Check {
    let m = model("centered-triangle", "Z2");
    let st = e(Statistics::new(&m))?;
    let th = theta_t_junction(&m);
    let explicit = term(&m, "U[0,3]", "[1,0,1,0]")
        .sub(&term(&m, "U[0,1]", "[1,0,1,0]"))
        .sub(&term(&m, "U[0,2]", "[1,0,0,1]"))
        .add(&term(&m, "U[0,1]", "[1,0,0,1]"))
        .sub(&term(&m, "U[0,3]", "[1,1,0,0]"))
        .add(&term(&m, "U[0,2]", "[1,1,0,0]"));
    ensure(th == explicit, || "Θ differs from its six-term form".into())?;
    let o = e(st.order_of(&th))?;
    ensure(o == Integer::from(4), || format!("order of Θ is {o}"))?;
    let permuted = word(
        &m,
        "U[1,3] U[1,2]^-1 U[0,1]^-1 U[1,3]^-1 U[1,2] U[0,1]",
        "[1,0,0,1]",
    );
    let d = e(st.order_of(&th.sub(&permuted)))?;
    ensure(d == one(), || format!("Θ - Θ' has order {d}"))?;
    for b in 0..m.config_count() {
        let o = e(st.order_of(&th.sub(&th.translate(&m, b))))?;
        ensure(o == one(), || {
            format!("Θ - δ_b Θ has order {o} for b={}", m.config_rep(b))
        })?;
    }
    Ok(format!(
        "order Θ = 4, Θ - Θ' order 1, Θ - δ_b Θ order 1 for all {} b",
        m.config_count()
    ))
}

fn c11() -> Check {
    let m = model("centered-tetrahedron-2skel", "Z2");
    let st = e(Statistics::new(&m))?;
    let r = e(st.compute())?;
    let g = r.generators.first().ok_or("no generator")?;
    let strict = e(simplify_randomly(
        &st,
        g,
        &SimplifyOptions {
            tries: 10_000,
            restarts: 200,
            seed: 2024,
            plateau: 0.0,
        },
    ))?;
    let opts = SimplifyOptions {
        tries: 100_000,
        restarts: 200,
        seed: 2024,
        plateau: 0.3,
    };
    let best = e(simplify_randomly(&st, g, &opts))?;
    let o = e(st.order_of(&best.expression.sub(g)))?;
    ensure(o == one(), || "simplified expression left the class".into())?;
    ensure(best.norm == 20, || {
        format!(
            "best norm {} (strict descent {}), expected 20",
            best.norm, strict.norm
        )
    })?;
    let w = e(reconstruct_process(&m, &best.expression, 0))?;
    let (back, _) = expand_theta(&m, &w, 0);
    ensure(back == best.expression, || {
        "reconstructed word does not re-expand".into()
    })?;
    ensure(w.len() >= 24, || {
        format!("word length {} below 24", w.len())
    })?;
    Ok(format!(
        "start norm {}; strict descent (200x10^4, seed 2024) reaches {}; plateau 0.3 (200x10^5) reaches {}; word of length {} re-expands exactly",
        g.norm1(),
        strict.norm,
        best.norm,
        w.len()
    ))
}

fn modified_orders(
    st: &Statistics,
    words: &[ProcessWord],
    targets: &[Expression],
) -> std::result::Result<Vec<Integer>, String> {
    let ext = e(st.impose(words))?;
    targets.iter().map(|t| e(ext.order_of(t))).collect()
}

fn c12() -> Check {
    let mut parts = Vec::new();
    for n in [2u64, 3] {
        let m = model("triangle", &format!("Z{n}"));
        let st = e(Statistics::new(&m))?;
        let r = e(st.compute())?;
        let w = e(parse_process(&format!("U1^{n}"), &m))?;
        let mo = modified_orders(&st, &[w], &r.generators)?;
        ensure(mo.iter().all(|o| *o == one()), || {
            format!("triangle Z{n}: modified orders {mo:?}")
        })?;
        parts.push(format!("triangle Z{n}: U1^{n} imposed, modified order 1"));
    }
    let m = model("boundary-simplex:3", "Z2xZ2");
    let st = e(Statistics::new(&m))?;
    let r = e(st.compute())?;
    let (g0, g1) = (&r.generators[0], &r.generators[1]);
    let targets = vec![g0.clone(), g1.clone(), g0.add(g1)];
    let faces: Vec<String> = m
        .operators()
        .iter()
        .map(|o| o.label.split(';').next().unwrap().to_string())
        .collect();
    let mut faces_dedup = faces.clone();
    faces_dedup.dedup();
    for (name, faces) in [
        ("all faces", faces_dedup.clone()),
        ("one face", vec![faces_dedup[0].clone()]),
    ] {
        let eqs = |k: usize| -> Vec<ProcessWord> {
            faces
                .iter()
                .map(|f| {
                    let text = match k {
                        0 => format!("{f};0]^2"),
                        1 => format!("{f};1]^2"),
                        _ => format!("({f};0] {f};1])^2"),
                    };
                    parse_process(&text, &m).unwrap()
                })
                .collect()
        };
        for pair in [[0, 1], [0, 2], [1, 2]] {
            let words: Vec<ProcessWord> = pair.iter().flat_map(|&k| eqs(k)).collect();
            let mo = modified_orders(&st, &words, &targets)?;
            ensure(mo.iter().all(|o| *o == Integer::from(2)), || {
                format!("{name}, equations {pair:?}: {mo:?}")
            })?;
        }
        let words: Vec<ProcessWord> = (0..3).flat_map(eqs).collect();
        let mo = modified_orders(&st, &words, &targets)?;
        ensure(mo.iter().all(|o| *o == one()), || {
            format!("{name}, all three: {mo:?}")
        })?;
        parts.push(format!(
            "∂Δ3 Z2xZ2 ({name}): any two equations leave order 2, all three give 1"
        ));
    }
    Ok(parts.join("; "))
}

fn c13() -> Check {
    let m = model_g("boundary-simplex:4", "Z2", Some(2), None);
    let st = e(Statistics::new(&m))?;
    let g = e(parse_process(
        "(U4 U3)^-2 (U4 [U2, U1^2]^-1 U3 [U2, U1^2])^2",
        &m,
    ))?;
    let (ex, end) = expand_theta(&m, &g, 0);
    ensure(end == 0, || "process is not closed".into())?;
    let o = e(st.order_of(&ex))?;
    ensure(o == Integer::from(2), || format!("order {o}"))?;
    Ok(format!(
        "membrane process of length {} has order 2 (U1..U5 = {})",
        g.len(),
        m.operators()
            .iter()
            .map(|o| o.label.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

const PROPERTY_MODELS: &[(&str, &str)] = &[
    ("triangle", "Z2"),
    ("triangle", "Z3"),
    ("square", "Z2"),
    ("centered-triangle", "Z2"),
    ("centered-triangle", "Z3"),
    ("centered-triangle", "Z2xZ2"),
    ("k5", "Z2"),
    ("k5", "Z3"),
    ("k33", "Z2"),
    ("centered-tetrahedron-1skel", "Z2"),
    ("centered-tetrahedron-1skel", "Z3"),
    ("centered-tetrahedron-2skel", "Z2"),
    ("boundary-simplex:3", "Z2"),
    ("boundary-simplex:3", "Z2xZ2"),
    ("boundary-simplex:4", "Z2"),
    ("points:2", "Z2xZ2"),
    ("points:3", "Z2xZ2"),
    ("double-arc-chain", "Z2"),
    ("double-y-graph", "Z2"),
];

fn c14() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    for &(spec, group) in PROPERTY_MODELS {
        let m = model(spec, group);
        let st = e(Statistics::new(&m))?;
        for j in 0..st.identity_count() {
            let w = e(st.identity(j))?;
            ensure(st.is_invariant(&w), || {
                format!("{spec} {group}: identity {j} is not invariant")
            })?;
        }
        let r = e(st.compute())?;
        ensure(r.t == r.t_f, || {
            format!("{spec} {group}: T={} T_f={}", r.t, r.t_f)
        })?;
        let basis = e(st.e_inv_basis())?;
        let n = Integer::from(m.config_count() as i64);
        for _ in 0..100 {
            let mut x = Expression::zero();
            for _ in 0..4 {
                if basis.ncols() == 0 {
                    break;
                }
                let c = e(Expression::from_sparse(
                    basis.column(rng.gen_range(0..basis.ncols())),
                    &m,
                ))?;
                x = x.add_scaled(rng.gen_range(-3..=3), &c);
            }
            for g in &r.generators {
                x = x.add_scaled(rng.gen_range(-3..=3), g);
            }
            ensure(st.is_invariant(&x), || {
                format!("{spec} {group}: sampled element not invariant")
            })?;
            let o = e(st.order_of(&x))?;
            ensure(!o.is_zero() && o.divides(&n), || {
                format!("{spec} {group}: order {o} does not divide |A|={n}")
            })?;
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} models: identities invariant, T = T_f, 100 sampled E_inv orders divide |A|"
    ))
}

fn c15() -> Check {
    let mut parts = Vec::new();
    for (spec, group) in [
        ("triangle", "Z2"),
        ("square", "Z2"),
        ("points:2", "Z2"),
        ("centered-triangle", "Z2"),
    ] {
        let m = model(spec, group);
        let reduced = e(identity_generators(&m, &StatsOptions::default()))?;
        let naive = e(identity_generators(
            &m,
            &StatsOptions {
                family: IdentityFamily::Naive {
                    max_letters: m.operator_count(),
                },
                ..StatsOptions::default()
            },
        ))?;
        ensure(same_lattice(&reduced, &naive), || {
            format!("{spec} {group}: lattices differ")
        })?;
        parts.push(format!(
            "{spec} ({} vs {} columns)",
            reduced.ncols(),
            naive.ncols()
        ));
    }
    Ok(format!("equal Hermite bases: {}", parts.join(", ")))
}

fn c16() -> Check {
    let g: FiniteAbelianGroup = e("Z4".parse())?;
    let a = model_g("centered-triangle", "Z4", Some(0), None);
    let gens = [e(g.element(&[1]))?, e(g.element(&[3]))?];
    let b = model_g("centered-triangle", "Z4", Some(0), Some(&gens));
    let ta = e(e(Statistics::new(&a))?.compute())?.t;
    let tb = e(e(Statistics::new(&b))?.compute())?.t;
    ensure(ta == tb, || format!("G0={{1}}: {ta}, G0={{1,3}}: {tb}"))?;
    Ok(format!(
        "centered-triangle Z4: T={ta} for G0={{1}} and G0={{1,3}}"
    ))
}

fn c17() -> Check {
    let mut parts = Vec::new();
    for spec in ["triangle", "centered-triangle"] {
        let m = model(spec, "Z2");
        let t = e(e(Statistics::new(&m))?.compute())?.t;
        for n in [2u64, 3] {
            let ext = e(m.with_cut_free_operator(n, "X"))?;
            let t2 = e(e(Statistics::new(&ext))?.compute())?.t;
            ensure(t == t2, || {
                format!("{spec}: T={t} but {t2} after adding a Z{n} operator")
            })?;
        }
        parts.push(format!(
            "{spec}: T={t} unchanged by a fresh Z2 or Z3 operator"
        ));
    }
    Ok(parts.join("; "))
}

fn c18() -> Check {
    let m = model("centered-triangle", "Z2");
    let st = e(Statistics::new(&m))?;
    let th = theta_t_junction(&m);
    for label in ["U[0,1]", "U[0,2]", "U[0,3]"] {
        let t = m.operator_by_label(label).unwrap();
        let out = e(st.eliminate_operator(&th, t))?;
        ensure(!out.uses_operator(t), || format!("{label} still present"))?;
        let o = e(st.order_of(&out.sub(&th)))?;
        ensure(o == one(), || {
            format!("eliminating {label}: difference has order {o}")
        })?;
        ensure(e(st.order_of(&out))? == Integer::from(4), || {
            format!("eliminating {label} changed the order")
        })?;
    }
    Ok("each spoke operator removed from Θ; difference order 1, order 4 kept".into())
}

fn c19() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let t0 = Instant::now();
    for case in 0..1000 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| {
                        if rng.gen_bool(0.4) {
                            0
                        } else {
                            rng.gen_range(-9..=9)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = SparseIntMatrix::from_i64_rows(&rows);
        let d = e(snf(&m))?;
        ensure(e(d.verify(&m))?, || format!("case {case}: U*M*V != D"))?;
        ensure(determinant(&d.u_matrix()).is_unit(), || {
            format!("case {case}: U not unimodular")
        })?;
        ensure(determinant(&e(d.v_matrix())?).is_unit(), || {
            format!("case {case}: V not unimodular")
        })?;
        let inv = d.invariants();
        ensure(inv.iter().all(|l| l.signum() > 0), || {
            format!("case {case}: nonpositive invariant")
        })?;
        ensure(inv.windows(2).all(|w| w[0].divides(&w[1])), || {
            format!("case {case}: divisibility chain")
        })?;
        let k = e(kernel_basis(&m))?;
        ensure(k.ncols() == c - d.rank(), || {
            format!("case {case}: kernel rank")
        })?;
        ensure(k.columns().iter().all(|v| m.mul_vec(v).is_zero()), || {
            format!("case {case}: kernel vector")
        })?;
        let x = SparseVec::from_pairs((0..c).map(|j| (j, Integer::from(rng.gen_range(-3i64..=3)))));
        let b = m.mul_vec(&x);
        let sol = e(solve_integer(&m, &b))?
            .ok_or_else(|| format!("case {case}: image point not solved"))?;
        ensure(m.mul_vec(&sol) == b, || {
            format!("case {case}: wrong solution")
        })?;
    }
    let dt = t0.elapsed();
    ensure(dt <= 30 * SEC, || format!("took {dt:?}"))?;
    Ok(format!(
        "1000 random matrices up to 8x8 with entries in [-9,9] ({dt:.2?})"
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, fn() -> Check)> = vec![
        (1, "1d particles", c1),
        (2, "anyons on the centered triangle", c2),
        (3, "nonplanar graphs", c3),
        (4, "fermionic loop", c4),
        (5, "loops on the tetrahedron boundary", c5),
        (6, "membranes", c6),
        (7, "point models", c7),
        (8, "graphs with crossings", c8),
        (9, "F-symbol expansion and order", c9),
        (10, "T-junction", c10),
        (11, "random simplification and reconstruction", c11),
        (12, "imposed processes", c12),
        (13, "membrane process", c13),
        (14, "E_id in E_inv, T = T_f, orders divide |A|", c14),
        (15, "reduced vs naive identities", c15),
        (16, "generating-set invariance", c16),
        (17, "cut-free operator", c17),
        (18, "operator elimination", c18),
        (19, "randomized SNF verification", c19),
    ];
    let only: Option<Vec<u32>> = std::env::var("EXSTAT_CRITERIA")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut failed = 0;
    for (id, name, f) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let dt = t0.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS [{name}] ({dt:.1?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{name}] ({dt:.1?}) {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
