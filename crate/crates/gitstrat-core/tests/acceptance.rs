//! Acceptance criteria 1 to 9 on the default representation, run against
//! the shipped data files of the `gitstrat` crate.
//!
//! Every criterion prints one `PASS`/`FAIL` line on stderr (bypassing the
//! test harness capture) and then asserts. All comparisons are exact.

use gitstrat::data::*;
use gitstrat::enumerate::{enumerate, EnumerateOptions};
use gitstrat::model::RepConfig;
use gitstrat::report::stratum_checked;
use gitstrat::verify::*;
use gitstrat_core::beta::{chamber_normalize, check_optimality, compute_frak_b, BetaRecord};
use gitstrat_core::exact::{min_norm_affine, rank, rat, ri, Rat, RatMat, RatVec};
use gitstrat_core::invariants::points::*;
use gitstrat_core::invariants::recipe::eval_recipe;
use gitstrat_core::invariants::*;
use gitstrat_core::poly::{Monomial, Poly};
use gitstrat_core::rep::RepSpec;
use gitstrat_core::ring::Ring;
use gitstrat_core::stabilizers::stabilizer_dim;
use gitstrat_core::strata::{block_ranges, stratum};
use gitstrat_core::substrata::{substrata_direct, substrata_scan_realizable};
use gitstrat_core::unipotent::{act_unipotent_full, UnipotentVars};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

/// Prints the criterion line and fails the test when any sub-check failed.
fn conclude(n: usize, checks: &[(String, bool)]) {
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect();
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    let detail = if failed.is_empty() {
        checks.iter().map(|(s, _)| s.as_str()).collect::<Vec<_>>().join("; ")
    } else {
        format!("failed: {}", failed.join("; "))
    };
    let _ = writeln!(std::io::stderr(), "acceptance criterion {n}: {status} ({detail})");
    assert!(failed.is_empty(), "criterion {n}: {}", failed.join("; "));
}

fn check(checks: &mut Vec<(String, bool)>, what: impl Into<String>, ok: bool) {
    checks.push((what.into(), ok));
}

struct Enumerated {
    records: Vec<BetaRecord>,
    elapsed: Duration,
}

fn flagship_enumeration() -> &'static Enumerated {
    static CELL: OnceLock<Enumerated> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let e = enumerate(&flagship(), &EnumerateOptions::default()).expect("enumeration");
        Enumerated { records: e.records, elapsed: t.elapsed() }
    })
}

fn small(json: &str) -> RepSpec {
    serde_json::from_str::<RepConfig>(json).unwrap().build().unwrap()
}

/// Exhaustive oracle: affine min-norm points of all subsets of weights
/// whose barycentric coefficients are positive, moved into the chamber.
fn exhaustive_values(rep: &RepSpec) -> BTreeSet<RatVec> {
    let gamma = rep.weights().gamma;
    let blocks = rep.group().blocks();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << gamma.len()) {
        let pts: Vec<RatVec> = (0..gamma.len()).filter(|i| mask >> i & 1 == 1).map(|i| gamma[i].clone()).collect();
        if let Ok((p, coeffs)) = min_norm_affine(&pts) {
            if !p.is_zero() && coeffs.iter().all(|c| *c > Rat::zero()) {
                out.insert(chamber_normalize(&p, &blocks).1);
            }
        }
    }
    out
}

#[test]
fn criterion_1_count() {
    let mut checks = Vec::new();
    for json in [
        r#"{"factors":[3],"summands":[[{"group":0,"degree":1}],[{"group":0,"degree":2}]]}"#,
        r#"{"factors":[2,1],"summands":[[{"group":0,"degree":1},{"group":1,"degree":1}],[{"group":0,"degree":1}]]}"#,
        r#"{"factors":[2],"summands":[[{"group":0,"degree":1}],[{"group":0,"degree":2}]]}"#,
    ] {
        let rep = small(json);
        assert!(rep.dim() <= 6 && rep.group().torus_rank() <= 3);
        let oracle = exhaustive_values(&rep);
        let got: BTreeSet<RatVec> =
            enumerate(&rep, &EnumerateOptions::default()).unwrap().records.into_iter().map(|r| r.beta).collect();
        check(&mut checks, format!("tiny oracle {json}: {} values", oracle.len()), got == oracle);
    }
    let e = flagship_enumeration();
    check(
        &mut checks,
        format!("flagship count {} (expected 292) in {:.0?}", e.records.len(), e.elapsed),
        e.records.len() == 292,
    );
    conclude(1, &checks);
}

#[test]
fn criterion_2_beta_values() {
    let mut checks = Vec::new();
    let computed: BTreeSet<RatVec> = flagship_enumeration().records.iter().map(|r| r.beta.clone()).collect();
    let table = shipped_betas();
    let missing: Vec<usize> = table.iter().filter(|(_, b)| !computed.contains(b)).map(|(i, _)| *i).collect();
    check(&mut checks, format!("{} table values, missing {missing:?}", table.len()), table.len() == 292 && missing.is_empty());
    let by_index: BTreeMap<usize, RatVec> = table.into_iter().collect();
    for (i, scale, v) in [
        (1, rat(1, 12), [0, 0, 0, 0, 0, -3, 1, 1, 1]),
        (49, rat(1, 100), [-8, -4, 0, 4, 8, -9, -1, 3, 7]),
        (292, rat(1, 20), [-8, -8, -8, 12, 12, -5, -5, -5, 15]),
    ] {
        let b = RatVec::scaled(scale, &v);
        check(&mut checks, format!("beta {i}"), by_index.get(&i) == Some(&b) && computed.contains(&b));
    }
    conclude(2, &checks);
}

#[test]
fn criterion_3_stratum_data() {
    let mut checks = Vec::new();
    let ctx = Context::flagship();
    let rows = load_strata(STRATA_JSON, "strata.json").unwrap();
    let r = verify_strata(&ctx, &rows);
    check(&mut checks, format!("{} rows, {} with W, failures {:?}", r.total, rows.iter().filter(|r| r.w.is_some()).count(), r.failures()), r.all_passed() && r.total == 292);
    let rep = flagship();
    let b16 = shipped_betas().into_iter().find(|(i, _)| *i == 16).unwrap().1;
    let s = stratum(&rep, &rep.weights(), &b16).unwrap();
    check(&mut checks, "beta 16: blocks [3] and none, W = x451..x454", s.cuts == vec![vec![3], vec![]] && s.w == vec![10, 20, 30, 40]);
    conclude(3, &checks);
}

#[test]
fn criterion_4_certificates() {
    let mut checks = Vec::new();
    let ctx = Context::flagship();
    let certs = shipped_certificates();
    let r = verify_certificates(&ctx, &certs);
    check(&mut checks, format!("{} of {} certificates pass", r.passed, r.total), r.all_passed() && r.total == 231);
    let errata = shipped_errata();
    let e = verify_errata(&ctx, &certs, &errata);
    check(&mut checks, format!("{} recorded errata: printed value fails, corrected passes", e.total), e.all_passed());
    let strata = load_strata(STRATA_JSON, "strata.json").unwrap();
    let nonempty: BTreeSet<usize> = strata.iter().filter(|r| r.nonempty).map(|r| r.index).collect();
    let empty: BTreeSet<usize> = certs.iter().map(|c| c.index).collect();
    let all: BTreeSet<usize> = (1..=292).collect();
    let union: BTreeSet<usize> = nonempty.union(&empty).copied().collect();
    check(
        &mut checks,
        format!("{} + {} = 292 bookkeeping", empty.len(), nonempty.len()),
        empty.len() == 231 && nonempty.len() == 61 && nonempty.is_disjoint(&empty) && union == all,
    );
    conclude(4, &checks);
}

fn u_var(i: usize) -> Poly {
    Poly::var(i)
}

fn quad(e: [u16; 3]) -> Poly {
    let mut p = Poly::zero();
    p.add_term(Monomial::from_exponents(&e), ri(1));
    p
}

#[test]
fn criterion_5_golden_values() {
    let mut checks = Vec::new();
    let v = |r: Result<Rat, InvariantError>| r.map(|x| x.to_string()).unwrap_or_else(|e| format!("{e:?}"));

    let p = v(p_wedge53(w_wedge53().coeffs()));
    let pp = v(p_wedge53(w_wedge53_prime().coeffs()));
    check(&mut checks, format!("wedge2(5)x3: P(w) = {p}, P(w') = {pp}"), p == "4" && pp == "1");

    let phi = phi_sym2_of_wedge43(w_wedge43().coeffs()).unwrap();
    let expect = u_var(0).times(&u_var(3)).minus(&u_var(1).times(&u_var(2)));
    let disc = v(p_wedge43(w_wedge43().coeffs()));
    check(&mut checks, format!("wedge2(4)x3: Phi(w) = {phi}, disc = {disc}"), phi == expect && disc == "1");

    let l: Vec<Poly> = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]].map(quad).to_vec();
    let at_w = pfaff_vector_53(w_wedge53().coeffs()).unwrap();
    let want_w = [l[5].negate(), l[4].negate(), l[2].plus(&l[3].scale(&ri(2))).negate(), l[1].negate(), l[0].negate()];
    let at_wp = pfaff_vector_53(w_wedge53_prime().coeffs()).unwrap();
    let want_wp = [l[5].negate(), l[4].negate(), l[2].plus(&l[3]).negate(), l[1].negate(), l[0].negate()];
    check(&mut checks, "Pfaffian vector at w and w'", at_w == want_w && at_wp == want_wp);

    let w = w_wedge43_plus4();
    let p1 = v(p1_433(w.coeffs()));
    check(&mut checks, format!("wedge2(4)x3+4: P1(w) = {p1} (expected 1)"), p1 == "1");
    let phi3 = phi3_433(w.coeffs()).unwrap();
    let want = u_var(0).times(&u_var(2)).plus(&u_var(1).power(2));
    check(&mut checks, format!("wedge2(4)x3+4: Phi3(w) = {} (expected u1*u3 + u2^2)", phi3.fmt_with(&["u1", "u2", "u3"])), phi3 == want);

    let w = w_wedge3_plus_332();
    let p2 = v(p2_332(w.coeffs()));
    let phi = phi_332(w.coeffs()).unwrap();
    let sym = phi.iter().enumerate().all(|(k, c)| {
        let (a, b, cc) = (k / 9, (k / 3) % 3, k % 3);
        *c == ri((a != b && b != cc && a != cc) as i64)
    });
    check(&mut checks, format!("wedge2(3)+3x3x2: P2(w) = {p2}, Phi(w2) symmetric sum"), p2 == "1" && sym);

    let recipes = shipped_recipes();
    let rep = flagship();
    for i in [270, 285, 286, 289, 42] {
        let recipe = recipes.iter().find(|r| r.index == i).and_then(|r| r.recipe.clone()).expect("explicit recipe");
        let vals = eval_recipe(&recipe, &recipe.representative_point(rep.dim())).unwrap();
        let shown: Vec<String> = vals.iter().map(ToString::to_string).collect();
        check(&mut checks, format!("recipe {i} = {}", shown.join(",")), vals.iter().all(Rat::is_one));
    }
    conclude(5, &checks);
}

/// Stabilizer dimension from finite differences of the group action: the
/// action is polynomial of degree at most 4 in `t` along `1 + t E_ab`, so the
/// five-point stencil gives the exact derivative at `t = 0`.
fn stabilizer_dim_by_differences(rep: &RepSpec, x: &[Rat]) -> usize {
    let degree = rep.summands().iter().map(|s| s.factors.iter().map(|f| f.degree).sum::<usize>()).max().unwrap_or(0);
    assert!(degree <= 4);
    let sizes = rep.group().factor_sizes().to_vec();
    let mut cols = Vec::new();
    for (j, &n) in sizes.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let at = |t: i64| {
                    let mut g: Vec<Vec<Vec<Rat>>> = sizes
                        .iter()
                        .map(|&m| (0..m).map(|r| (0..m).map(|c| ri((r == c) as i64)).collect()).collect())
                        .collect();
                    g[j][a][b] += ri(t);
                    rep.act(&g, x)
                };
                let (p1, m1, p2, m2) = (at(1), at(-1), at(2), at(-2));
                cols.push(
                    (0..x.len())
                        .map(|i| (ri(8) * (&p1[i] - &m1[i]) - (&p2[i] - &m2[i])) / ri(12))
                        .collect::<Vec<Rat>>(),
                );
            }
        }
    }
    rep.group().dim() - rank(&RatMat::from_rows(cols))
}

#[test]
fn criterion_6_stabilizers() {
    let mut checks = Vec::new();
    let fixtures = shipped_fixtures();
    let r = verify_fixtures(&fixtures);
    let expected = [4, 4, 8, 4, 7, 3, 5, 2, 4, 3, 2, 0];
    let got: Vec<usize> = fixtures.iter().map(|f| f.expected).collect();
    check(&mut checks, format!("{} fixtures with expected {got:?}", r.total), r.all_passed() && got == expected);
    for f in &fixtures {
        let oracle = stabilizer_dim_by_differences(&f.rep, &f.point);
        let d = stabilizer_dim(&f.rep, &f.point);
        check(&mut checks, format!("{}: {d}, difference oracle {oracle}", f.name), d == oracle);
    }
    conclude(6, &checks);
}

fn random_rat(rng: &mut StdRng) -> Rat {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn random_element(rng: &mut StdRng, sizes: &[usize]) -> Vec<Vec<Vec<Rat>>> {
    sizes.iter().map(|&n| (0..n).map(|_| (0..n).map(|_| random_rat(rng)).collect()).collect()).collect()
}

/// Random element of `SL_n` as a product of unipotent lower and upper factors.
fn random_sl(rng: &mut StdRng, n: usize) -> Vec<Vec<Rat>> {
    let mut l = vec![vec![Rat::zero(); n]; n];
    let mut u = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        l[i][i] = Rat::one();
        u[i][i] = Rat::one();
        for j in 0..i {
            l[i][j] = random_rat(rng);
            u[j][i] = random_rat(rng);
        }
    }
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &l[i][k] * &u[k][j]).sum()).collect()).collect()
}

#[test]
fn criterion_7_equivariance_and_optimality() {
    let mut checks = Vec::new();
    let mut rng = StdRng::seed_from_u64(7);
    for spec in catalogue() {
        let sizes = spec.rep.group().factor_sizes().to_vec();
        let mut ok = 0;
        while ok < 100 {
            let g = random_element(&mut rng, &sizes);
            let chi = character_value(&g, &spec.character);
            if chi.is_zero() {
                continue;
            }
            let x: Vec<Rat> = (0..spec.rep.dim()).map(|_| random_rat(&mut rng)).collect();
            let lhs = (spec.eval)(&spec.rep.act(&g, &x)).unwrap();
            let rhs = chi * (spec.eval)(&x).unwrap();
            if lhs != rhs {
                break;
            }
            ok += 1;
        }
        check(&mut checks, format!("{}: {ok}/100", spec.name), ok == 100);
    }

    // Shipped recipes are invariant under the product of SL over the blocks of M_beta.
    let rep = flagship();
    let weights = rep.weights();
    let betas: BTreeMap<usize, RatVec> = shipped_betas().into_iter().collect();
    let mut recipe_ok = 0;
    let mut recipe_total = 0;
    for l in shipped_recipes() {
        let Some(recipe) = l.recipe else { continue };
        recipe_total += 1;
        let s = stratum(&rep, &weights, &betas[&l.index]).unwrap();
        let blocks = block_ranges(&s.cuts, rep.group());
        let group_blocks = rep.group().blocks();
        let mut good = true;
        for _ in 0..100 {
            let mut g: Vec<Vec<Vec<Rat>>> = rep
                .group()
                .factor_sizes()
                .iter()
                .map(|&m| (0..m).map(|r| (0..m).map(|c| ri((r == c) as i64)).collect()).collect())
                .collect();
            for b in &blocks {
                let j = group_blocks.iter().position(|f| f.start <= b.start && b.end <= f.end).unwrap();
                let off = group_blocks[j].start;
                let m = random_sl(&mut rng, b.len());
                for (r, row) in m.into_iter().enumerate() {
                    for (c, e) in row.into_iter().enumerate() {
                        g[j][b.start - off + r][b.start - off + c] = e;
                    }
                }
            }
            let mut x = vec![Rat::zero(); rep.dim()];
            for &o in &s.z {
                x[o - 1] = random_rat(&mut rng);
            }
            if eval_recipe(&recipe, &rep.act(&g, &x)).unwrap() != eval_recipe(&recipe, &x).unwrap() {
                good = false;
                break;
            }
        }
        recipe_ok += good as usize;
    }
    check(&mut checks, format!("{recipe_ok}/{recipe_total} recipes invariant under 100 block-SL elements"), recipe_ok == recipe_total);

    let records = &flagship_enumeration().records;
    let optimal = records.iter().filter(|r| check_optimality(&weights.gamma, r)).count();
    check(&mut checks, format!("optimality on the witness support for {optimal}/{} values", records.len()), optimal == records.len() && optimal > 0);
    conclude(7, &checks);
}

#[test]
fn criterion_8_schedules() {
    let mut checks = Vec::new();
    let ctx = Context::flagship();
    let schedules = shipped_schedules();
    let r = verify_schedules(&ctx, &schedules);
    let explicit: BTreeSet<usize> = schedules.iter().filter(|s| s.schedule.is_some()).map(|s| s.index).collect();
    let passed: BTreeSet<usize> =
        r.rows.iter().filter(|row| row.status == Status::Pass).filter_map(|row| row.id.parse().ok()).collect();
    check(&mut checks, format!("explicit schedules {explicit:?} pass"), explicit.is_subset(&passed) && r.failed == 0);
    check(&mut checks, "cases 3, 9, 49, 50, 273 covered", [3, 9, 49, 50, 273].iter().all(|i| explicit.contains(i)));

    let rep = flagship();
    let group = rep.group();
    let mut rng = StdRng::seed_from_u64(8);
    let mut agree = 0;
    let mut total = 0;
    for l in schedules.iter() {
        let Some(s) = &l.schedule else { continue };
        for vars in [UnipotentVars::with_pinned(group, &s.pinned).unwrap(), UnipotentVars::new(group)] {
            let polys = act_unipotent_full(&rep, &l.representative, &vars);
            for _ in 0..20 {
                let u: Vec<Rat> = (0..vars.all_vars().len()).map(|_| random_rat(&mut rng)).collect();
                let numeric = rep.act(&vars.specialize(&u), &l.representative);
                total += 1;
                agree += polys.iter().zip(&numeric).all(|(p, n)| p.eval(&u) == *n) as usize;
            }
        }
    }
    check(&mut checks, format!("symbolic n(u)R equals numeric at {agree}/{total} random u"), agree == total && total > 0);
    conclude(8, &checks);
}

#[test]
fn criterion_9_substrata() {
    let mut checks = Vec::new();
    let rep = flagship();
    let weights = rep.weights();
    let table = shipped_betas();
    let frak_b: Vec<RatVec> = table.iter().map(|(_, b)| b.clone()).collect();
    for i in [289, 270, 292] {
        let beta = &table.iter().find(|(j, _)| *j == i).unwrap().1;
        let s = stratum_checked(&rep, &weights, beta).unwrap();
        let direct = substrata_direct(&s, &weights, rep.group());
        let scan = substrata_scan_realizable(&s, &weights, &frak_b, rep.group());
        check(&mut checks, format!("beta {i}: |Z| = {}, {} candidates by both routes", s.z.len(), direct.len()), direct == scan);
    }
    // The same cross-check with the set computed from scratch.
    let computed: Vec<RatVec> = compute_frak_b(&small(
        r#"{"factors":[3,2],"summands":[[{"group":0,"degree":2},{"group":1,"degree":1}]]}"#,
    ))
    .into_iter()
    .map(|r| r.beta)
    .collect();
    let small_rep = small(r#"{"factors":[3,2],"summands":[[{"group":0,"degree":2},{"group":1,"degree":1}]]}"#);
    let sw = small_rep.weights();
    let all_agree = computed.iter().all(|b| {
        let s = stratum(&small_rep, &sw, b).unwrap();
        substrata_direct(&s, &sw, small_rep.group()) == substrata_scan_realizable(&s, &sw, &computed, small_rep.group())
    });
    check(&mut checks, format!("all {} values of wedge2(3)x2 agree", computed.len()), all_agree);
    conclude(9, &checks);
}
