//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always appear in `cargo test` output.

use std::time::{Duration, Instant};

use serde_json::Value;
use vstrip_llt::harmonics::{hall_littlewood, nabla_e, nabla_p};
use vstrip_llt::llt::{self, Coloring, Orientation, OrientationSpace};
use vstrip_llt::partitions::{kostka, partitions_of};
use vstrip_llt::relations::{self, pleth_bridge, RecursionEvaluator, Suite};
use vstrip_llt::schroeder::{enumerate, enumerate_dyck, nu_alpha};
use vstrip_llt::schur::{schur_routes, triple_agreement};
use vstrip_llt::{Basis, BigRational, Coeff, Partition, SchroederPath, Sym};
use vstrip_llt_cli::run;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn path(w: &str) -> SchroederPath {
    SchroederPath::parse(w).unwrap()
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn s(v: &[usize]) -> Sym {
    Sym::basis_element(Basis::S, part(v))
}

fn poly(monomials: &[(i32, i32)]) -> Coeff {
    monomials.iter().fold(Coeff::zero(), |acc, &(q, t)| {
        &acc + &Coeff::monomial(BigRational::from_integer(1.into()), q, t)
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = run(std::iter::once("llt").chain(args.iter().copied()));
    ensure(out.code == 0, || {
        format!("`llt {}` exited {}: {}", args.join(" "), out.code, out.stderr)
    })?;
    Ok(out.stdout)
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn all_paths(max_n: usize) -> Vec<SchroederPath> {
    (1..=max_n).flat_map(|n| enumerate(n).unwrap()).collect()
}

fn schroeder_counts() -> Check {
    let mut got = Vec::new();
    for n in 1..=5 {
        got.push(cli(&["paths", &n.to_string()])?.trim().to_string());
    }
    ensure(got == ["1", "3", "11", "45", "197"], || format!("counts {got:?}"))?;
    Ok(got.join(", "))
}

fn nndee_schur_expansion() -> Check {
    let want = &s(&[1, 1, 1]).scale(&Coeff::q_pow(2)) + &s(&[2, 1]).scale(&Coeff::q());
    let routes = schur_routes::<BigRational>(&path("nndee")).map_err(err)?;
    for (name, f) in ["elw", "kostka", "convert"].iter().zip(&routes) {
        ensure(*f == want, || format!("{name} gave {f}"))?;
    }
    let printed = cli(&["expand", "nndee", "--basis", "s"])?;
    ensure(printed.trim() == "q*s[2,1] + q^2*s[1,1,1]", || {
        format!("cli printed {printed}")
    })?;
    Ok(format!("{want} by elw, kostka and convert"))
}

fn main_identity() -> Check {
    let paths = all_paths(6);
    ensure(paths.len() == 1 + 3 + 11 + 45 + 197 + 903, || {
        format!("{} paths", paths.len())
    })?;
    single_threaded(|| {
        for p in &paths {
            let lhs: Sym = llt::llt::<BigRational>(p)
                .map_err(err)?
                .shift_q(1)
                .map_err(err)?
                .convert(Basis::E);
            let rhs: Sym = llt::orientation_e_expansion(p).map_err(err)?;
            ensure(lhs == rhs, || format!("{p}: {lhs} vs {rhs}"))?;
        }
        Ok(format!("{} paths, single thread", paths.len()))
    })
}

fn relation_suites() -> Check {
    let mut summary = Vec::new();
    for suite in Suite::REQUIRED {
        let r = relations::verify(suite, &suite.default_oracle(), 6).map_err(err)?;
        ensure(r.passed(), || format!("{r}; first failure {:?}", r.failures.first()))?;
        ensure(r.instances > 0, || format!("{suite} has no instances"))?;
        summary.push(format!("{} {}", suite, r.instances));
    }
    Ok(summary.join(", "))
}

fn axiomatic_evaluator() -> Check {
    let ev = RecursionEvaluator::new();
    let paths = all_paths(6);
    for p in &paths {
        let a = ev.eval(p).map_err(err)?;
        let b: Sym = llt::llt::<BigRational>(p).map_err(err)?.convert(Basis::E);
        ensure(a == b, || format!("{p}: {a} vs {b}"))?;
    }
    Ok(format!("{} paths", paths.len()))
}

fn schur_triple() -> Check {
    let paths = all_paths(5);
    for p in &paths {
        ensure(triple_agreement(p).map_err(err)?, || format!("{p}"))?;
    }
    Ok(format!("{} paths", paths.len()))
}

fn nabla_p_table() -> Check {
    let rows = [
        s(&[1]),
        &s(&[2]) + &s(&[1, 1]).scale(&poly(&[(1, 0), (0, 1), (1, 1)])),
        [
            (vec![3], poly(&[(0, 0)])),
            (
                vec![2, 1],
                poly(&[(1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)]),
            ),
            (
                vec![1, 1, 1],
                poly(&[
                    (3, 0),
                    (1, 1),
                    (2, 1),
                    (3, 1),
                    (1, 2),
                    (2, 2),
                    (3, 2),
                    (0, 3),
                    (1, 3),
                    (2, 3),
                ]),
            ),
        ]
        .iter()
        .fold(Sym::zero(Basis::S), |acc, (l, c)| &acc + &s(l).scale(c)),
    ];
    for (i, want) in rows.iter().enumerate() {
        let n = i + 1;
        let got = nabla_p(n).map_err(err)?;
        ensure(&got == want, || format!("n = {n}: {got}"))?;
        let doc: Value = serde_json::from_str(&cli(&["nabla-p", &n.to_string(), "--json"])?).map_err(err)?;
        let printed: Sym = serde_json::from_value(doc["result"]["expansion"].clone()).map_err(err)?;
        ensure(&printed == want, || format!("cli n = {n}: {printed}"))?;
    }
    Ok("n = 1, 2, 3".into())
}

fn is_natural(c: &Coeff) -> bool {
    c.terms()
        .all(|(&(q, t), v)| q >= 0 && t >= 0 && v.is_integer() && *v > BigRational::from_integer(0.into()))
}

fn shuffle_positivity() -> Check {
    let mut terms = 0;
    for n in 1..=5 {
        let f = nabla_e(n).map_err(err)?.convert(Basis::E).shift_q(1).map_err(err)?;
        for (mu, c) in f.terms() {
            ensure(is_natural(c), || format!("n = {n}, e{mu}: {c}"))?;
            terms += 1;
        }
    }
    Ok(format!("{terms} e-coefficients in N[q,t]"))
}

fn pleth_bridge_check() -> Check {
    let mut count = 0;
    for n in 1..=5 {
        for p in enumerate_dyck(n).map_err(err)? {
            let g: Sym = llt::llt::<BigRational>(&p).map_err(err)?;
            let bridged = pleth_bridge(&g, n).map_err(|e| format!("{p}: {e}"))?;
            let x: Sym = llt::chromatic::<BigRational>(&p).map_err(err)?.convert(Basis::E);
            ensure(bridged == x, || format!("{p}: {bridged} vs {x}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} Dyck paths"))
}

fn reverse_and_omega() -> Check {
    let paths = all_paths(6);
    for p in &paths {
        let a: Sym = llt::llt(p).map_err(err)?;
        let b: Sym = llt::llt(&p.reverse()).map_err(err)?;
        ensure(a == b, || format!("{p} vs {}", p.reverse()))?;
    }
    let mut dyck = 0;
    for n in 1..=5 {
        for p in enumerate_dyck(n).map_err(err)? {
            let g: Sym = llt::llt(&p).map_err(err)?;
            let rhs = g.subst_q_reciprocal().scale(&Coeff::q_pow(p.area() as i32));
            ensure(g.omega().equals(&rhs), || format!("omega fails on {p}"))?;
            dyck += 1;
        }
    }
    Ok(format!("reversal on {} paths, omega on {dyck} Dyck paths", paths.len()))
}

fn hall_littlewood_sanity() -> Check {
    let mut count = 0;
    for n in 1..=5 {
        let shapes = partitions_of(n).map_err(err)?;
        for mu in &shapes {
            let h = hall_littlewood(mu).map_err(|e| format!("{mu}: {e}"))?;
            let conj = mu.conjugate();
            let at0 = h.specialize_q(0).map_err(err)?;
            ensure(at0 == s(conj.parts()), || format!("{mu} at q = 0: {at0}"))?;
            let mut h_conj = Sym::zero(Basis::S);
            for nu in &shapes {
                h_conj.add_term(nu.clone(), Coeff::from_int(kostka(nu, &conj).map_err(err)? as i64));
            }
            let at1 = h.specialize_q(1).map_err(err)?;
            ensure(at1 == h_conj, || format!("{mu} at q = 1: {at1}"))?;
            ensure(at1.equals(&Sym::basis_element(Basis::H, conj.clone())), || {
                format!("{mu}: not h{conj}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} partitions"))
}

fn example_values() -> Check {
    let p = path("nndnnenedeee");
    ensure(p.area() == 12, || format!("area {}", p.area()))?;
    let b = path("nnddndeee").bounce_at((3, 6)).map_err(err)?;
    ensure(b.partition == [6, 3, 1, 0], || {
        format!("bounce partition {:?}", b.partition)
    })?;
    let asc = llt::asc_coloring(&p.graph(), &Coloring(vec![4, 2, 5, 1, 3, 1, 2])).map_err(err)?;
    ensure(asc == 4, || format!("coloring asc {asc}"))?;
    let g = path("nnnddeneee").graph();
    let space = OrientationSpace::new(&g).map_err(err)?;
    let up = [(1, 3), (2, 3), (2, 4), (3, 4), (5, 6)];
    let mask = g
        .non_strict_edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| up.contains(e))
        .fold(0, |m, (i, _)| m | 1 << i);
    let theta = Orientation { mask };
    let lambda = space.lambda(theta);
    ensure(lambda == part(&[3, 3]) && theta.asc() == 5, || {
        format!("orientation gives {lambda} with asc {}", theta.asc())
    })?;
    let d = nu_alpha(&[0, 3, 1, 0, 2, 0]).map_err(err)?;
    ensure(d.area == 8 && d.below == 1, || {
        format!("area {} below {}", d.area, d.below)
    })?;
    Ok("area 12, bounce (6,3,1,0), asc 4, (3,3) with asc 5, area 8 below 1".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Schröder counts", Duration::from_secs(1), schroeder_counts),
        (
            "nndee Schur expansion, three routes",
            Duration::from_secs(1),
            nndee_schur_expansion,
        ),
        ("main identity, n <= 6", Duration::from_secs(300), main_identity),
        ("relation suites, n <= 6", Duration::from_secs(600), relation_suites),
        ("axiomatic evaluator, n <= 6", Duration::MAX, axiomatic_evaluator),
        ("Schur triple agreement, n <= 5", Duration::MAX, schur_triple),
        ("nabla p table, n <= 3", Duration::from_secs(60), nabla_p_table),
        ("shuffle positivity, n <= 5", Duration::MAX, shuffle_positivity),
        ("plethystic bridge, n <= 5", Duration::MAX, pleth_bridge_check),
        ("reversal and omega relation", Duration::MAX, reverse_and_omega),
        ("Hall-Littlewood specializations", Duration::MAX, hall_littlewood_sanity),
        ("example values", Duration::from_secs(1), example_values),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:.0?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
