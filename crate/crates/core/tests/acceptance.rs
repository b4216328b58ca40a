// One test per acceptance criterion. Each prints a single PASS/FAIL line
// (visible with `--nocapture`) before asserting.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cantor_approx::cantor::{mesh, standard_partition, word_distance};
use cantor_approx::endo::sup_distance_at_depth;
use cantor_approx::factor::{compile_factor, coverage_witness, preimage_cylinder, FactorConfig};
use cantor_approx::marker::{build_markers, verify_coverage, verify_disjoint, MarkerConfig};
use cantor_approx::pipeline::{approximate, verify_certificate, ApproxConfig};
use cantor_approx::sft::{self, is_subgraph, MixingVerdict};
use cantor_approx::{catalog, CantorMap, DirectedGraph, Dyadic, Error, Refusal, Symbol, Verdict};

fn report(n: usize, started: Instant, outcome: Result<String, String>) {
    let secs = started.elapsed().as_secs_f64();
    match &outcome {
        Ok(detail) => println!("criterion {n}: PASS ({secs:.1}s) {detail}"),
        Err(why) => println!("criterion {n}: FAIL ({secs:.1}s) {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {n}: {why}");
    }
}

fn check(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn graph_from_mask(n: usize, mask: u32) -> DirectedGraph {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if mask >> (i * n + j) & 1 == 1 {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    DirectedGraph::new(names.clone(), edges).unwrap()
}

/// Least `N` with a path of every length `>= N` between every pair, found by
/// extending walks one edge at a time; `None` if some pair misses lengths
/// forever.
fn brute_mixing_constant(n: usize, mask: u32) -> Option<usize> {
    let edge = |i: usize, j: usize| mask >> (i * n + j) & 1 == 1;
    let horizon = 3 * n * n + 2;
    // all_pairs[t]: every ordered pair is joined by a walk of exactly t edges
    let mut all_pairs = vec![false; horizon + 1];
    let mut frontier: Vec<Vec<bool>> = (0..n).map(|s| (0..n).map(|v| v == s).collect()).collect();
    for t in 1..=horizon {
        frontier = frontier
            .iter()
            .map(|f| (0..n).map(|v| (0..n).any(|u| f[u] && edge(u, v))).collect())
            .collect();
        all_pairs[t] = frontier.iter().all(|f| f.iter().all(|&b| b));
    }
    // The reachability sets are eventually periodic with preperiod and
    // period far below the horizon, so the last n + 1 steps decide.
    if !all_pairs[horizon - n..].iter().all(|&b| b) {
        return None;
    }
    let last_gap = (1..=horizon).rev().find(|&t| !all_pairs[t]).unwrap_or(0);
    Some(last_gap + 1)
}

#[test]
fn criterion_1_mixing_oracle() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let mut graphs = 0;
        let mut mixing = 0;
        for n in 1..=4usize {
            for mask in 0u32..(1 << (n * n)) {
                let g = graph_from_mask(n, mask);
                if !g.is_essential() {
                    continue;
                }
                graphs += 1;
                let got = sft::is_mixing(&g).map_err(|e| e.to_string())?.constant();
                let want = brute_mixing_constant(n, mask);
                check(got == want, || format!("{g:?}: is_mixing {got:?}, brute force {want:?}"))?;
                mixing += want.is_some() as usize;
            }
        }
        check(started.elapsed().as_secs() < 60, || "took over a minute".into())?;
        Ok(format!("{graphs} essential graphs, {mixing} mixing, constants agree"))
    };
    report(1, started, run());
}

fn random_essential(rng: &mut ChaCha8Rng) -> DirectedGraph {
    loop {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.15..0.6);
        let mask: u64 = (0..n * n).filter(|_| rng.gen_bool(p)).fold(0, |m, b| m | 1 << b);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = (0..n * n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (names[b / n].clone(), names[b % n].clone()))
            .collect();
        let g = DirectedGraph::new(names.clone(), edges).unwrap();
        if g.is_essential() {
            return g;
        }
    }
}

/// `trace(A^t)` for `t = 1..=max` with plain integer arithmetic.
fn traces(g: &DirectedGraph, max: usize) -> Vec<u128> {
    let n = g.len();
    let a: Vec<Vec<u128>> =
        (0..n).map(|i| (0..n).map(|j| g.has_edge(i as Symbol, j as Symbol) as u128).collect()).collect();
    let mut p = a.clone();
    let mut out = vec![0];
    for _ in 1..=max {
        out.push((0..n).map(|i| p[i][i]).sum());
        p = (0..n).map(|i| (0..n).map(|j| (0..n).map(|m| p[i][m] * a[m][j]).sum()).collect()).collect();
    }
    out
}

#[test]
fn criterion_2_period_spectrum_oracle() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut members = 0;
        for _ in 0..200 {
            let g = random_essential(&mut rng);
            let per = sft::per_spectrum(&g);
            let tr = traces(&g, 24);
            for t in 1..=24 {
                check(per.contains(t) == (tr[t] > 0), || {
                    format!("{g:?}: period {t}: spectrum says {}, trace is {}", per.contains(t), tr[t])
                })?;
                members += per.contains(t) as usize;
            }
        }
        Ok(format!("200 graphs, n <= 24, {members} members confirmed by traces"))
    };
    report(2, started, run());
}

fn example_maps() -> Vec<(&'static str, CantorMap)> {
    let mut maps = catalog::binary_maps();
    maps.push(("golden shift", catalog::golden_shift_map()));
    maps.push(("2-3 shift", catalog::two_three_shift_map()));
    maps
}

#[test]
fn criterion_3_continuity_moduli() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let mut pairs_checked = 0u64;
        for (name, f) in example_maps() {
            let g = f.space().graph();
            let w = f.window();
            for t in 1..=6 {
                let eps = Dyadic::pow2_neg(t);
                let delta = f.delta_for(eps).map_err(|e| e.to_string())?;
                check(delta < eps.half(), || format!("{name}: δ = {delta} is not below ε/2 for ε = {eps}"))?;
                // d(x, y) <= δ means agreement on the first -log2 δ symbols;
                // words two longer than that see every relevant pair.
                let agree = delta.neg_log2().expect("power of two") as usize;
                let len = agree + 2;
                let mut classes: BTreeMap<Vec<Symbol>, Vec<Vec<Symbol>>> = BTreeMap::new();
                g.for_each_word(len, |x| {
                    classes.entry(x[..agree].to_vec()).or_default().push(x.to_vec());
                    true
                });
                for class in classes.values() {
                    for x in class {
                        for y in class {
                            let d = word_distance(x, y).value;
                            check(d <= delta, || format!("{name}: grouping error"))?;
                            let fx = f.image_cylinder(x).map_err(|e| e.to_string())?;
                            let fy = f.image_cylinder(y).map_err(|e| e.to_string())?;
                            debug_assert_eq!(fx.len(), len - w);
                            let fd = word_distance(&fx, &fy).value;
                            check(fd < eps.half(), || {
                                format!("{name}, ε = {eps}: d(f{x:?}, f{y:?}) = {fd} is not below ε/2")
                            })?;
                            pairs_checked += 1;
                        }
                    }
                }
            }
        }

        let mut related = 0;
        for (fname, f) in example_maps() {
            for (gname, g) in example_maps() {
                if f.space() != g.space() {
                    continue;
                }
                for k in 1..=5 {
                    let gf = f.cover_graph(k).map_err(|e| e.to_string())?;
                    let gg = g.cover_graph(k).map_err(|e| e.to_string())?;
                    if !is_subgraph(&gg, &gf) {
                        continue;
                    }
                    let m = mesh(f.space(), &standard_partition(f.space(), k).map_err(|e| e.to_string())?);
                    let d = sup_distance_at_depth(&f, &g, k + 6).map_err(|e| e.to_string())?;
                    for t in 1..=6 {
                        let eps = Dyadic::pow2_neg(t);
                        if m > f.delta_for(eps).map_err(|e| e.to_string())? {
                            continue;
                        }
                        check(d.lower < eps, || {
                            format!("G_{gname} ⊆ G_{fname} at depth {k}, ε = {eps}: d(f, g) >= {}", d.lower)
                        })?;
                        // d.upper also bounds the distance from above when no
                        // disagreement was seen within the compared depth.
                        check(d.upper < eps, || format!("{gname} vs {fname} at depth {k}: upper {}", d.upper))?;
                        related += 1;
                    }
                }
            }
        }
        check(related > 0, || "no subgraph-related pair met mesh <= δ".into())?;
        Ok(format!("{pairs_checked} word pairs for the δ conditions, {related} (f, g, k, ε) cases for the sup bound"))
    };
    report(3, started, run());
}

#[test]
fn criterion_4_marker_sets() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let mut lines = Vec::new();
        for (name, g) in [("full", catalog::full_shift()), ("golden", catalog::golden_mean())] {
            for n in [2, 3] {
                let k = 2 * n + 1;
                let m = build_markers(&g, &MarkerConfig::new(n, k)).map_err(|e| format!("{name} N={n}: {e}"))?;
                for (what, v) in [("disjoint", verify_disjoint(&m)), ("coverage", verify_coverage(&m))] {
                    check(matches!(v, Verdict::Exhaustive { .. }), || {
                        format!("{name} N={n} k={k}: {what} verdict {v:?}, expected an exhaustive scan")
                    })?;
                }
                lines.push(format!("{name} N={n} L={}", m.window_radius().unwrap_or(0)));
            }
        }
        check(started.elapsed().as_secs() < 300, || "took over five minutes".into())?;
        Ok(lines.join(", "))
    };
    report(4, started, run());
}

#[test]
fn criterion_5_factor_code() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let lambda = catalog::golden_mean();
        let sigma = catalog::full_shift();
        let w = sft::words(&sigma, 3);
        let code = compile_factor(&lambda, &sigma, &w, &FactorConfig::default()).map_err(|e| e.to_string())?;
        let m = code.as_marker().ok_or("expected a marker code")?;

        // Σ is the complete graph, so every output sequence is admissible;
        // the verdict says so instead of pretending to scan.
        let adm = code.image_admissibility(1 << 21);
        check(adm.holds(), || format!("image admissibility: {adm:?}"))?;

        // Evaluate the code on long random points of Λ: every output is
        // decided, consecutive outputs are edges of Σ, and the code commutes
        // with the shift.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut x: Vec<Symbol> = vec![rng.gen_range(0..2)];
            while x.len() < 2000 {
                let last = *x.last().unwrap();
                x.push(if last == 0 { rng.gen_range(0..2) } else { 0 });
            }
            let out = code.outputs(&x, 800, 1200).map_err(|e| e.to_string())?;
            let out: Vec<Symbol> = out.into_iter().collect::<Option<_>>().ok_or("undecided output")?;
            check(sigma.is_path(&out), || "image word leaves Σ".into())?;
            let shifted = code.outputs(&x[1..], 799, 1199).map_err(|e| e.to_string())?;
            check(shifted.iter().map(|s| s.unwrap()).eq(out.iter().copied()), || "not shift-commuting".into())?;
        }

        let wit = coverage_witness(&code, &m.constants().w0).map_err(|e| e.to_string())?;
        check(wit.verify(&code).map_err(|e| e.to_string())?, || "coverage witness does not verify".into())?;

        for u in &w {
            let p = preimage_cylinder(&code, 0, u, Some(&wit), 1 << 16).map_err(|e| e.to_string())?;
            check(!p.is_empty(), || format!("preimage of {} is empty", sigma.render_word(u)))?;
        }
        Ok(format!(
            "N={} k={} radius={} admissibility {:?}, witness at {}, {} preimages nonempty",
            m.constants().big_n,
            m.markers().k(),
            code.radius(),
            adm,
            wit.position,
            w.len()
        ))
    };
    report(5, started, run());
}

#[test]
fn criterion_6_positive_instance() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let lambda = catalog::golden_mean();
        let f = catalog::full_shift_map();
        let cfg = ApproxConfig::default();
        let r = approximate(&lambda, &f, &[2, 3, 4, 5, 6], &cfg).map_err(|e| e.to_string())?;
        check(r.succeeded(), || format!("halted: {:?}", r.halted))?;
        check(r.certificates.len() == 5, || "expected five certificates".into())?;
        check(r.strictly_decreasing, || "totals not strictly decreasing".into())?;
        let totals: Vec<Dyadic> = r.certificates.iter().map(|c| c.total_bound).collect();
        check(totals.windows(2).all(|p| p[1] < p[0]), || format!("totals {totals:?}"))?;
        let e6 = r.certificates[4].conjugate.epsilon;
        check(e6 <= Dyadic::pow2_neg(3), || format!("ε_6 = {e6}"))?;
        for c in &r.certificates {
            let chk = verify_certificate(&lambda, &f, c, &cfg).map_err(|e| e.to_string())?;
            check(chk.all(), || format!("depth {}: {chk:?}", c.depth))?;
            check(c.cover_graph == f.cover_graph(c.depth).unwrap(), || "cover graph mismatch".into())?;
            let delta = f.delta_for(c.conjugate.epsilon).unwrap();
            check(c.conjugate.mesh <= delta, || format!("depth {}: mesh above δ", c.depth))?;
        }
        check(started.elapsed().as_secs() < 300, || "took over five minutes".into())?;
        let shown: Vec<String> = totals.iter().map(|t| t.to_string()).collect();
        Ok(format!("totals {}, ε_6 = {e6}, all re-verified", shown.join(" > ")))
    };
    report(6, started, run());
}

#[test]
fn criterion_7_period_obstruction() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let lambda = catalog::full_shift();
        let f = catalog::two_three_shift_map();
        let schedules: [&[usize]; 4] = [&[1], &[2, 3], &[1, 2, 3, 4], &[3, 5]];
        for depths in schedules {
            let r = approximate(&lambda, &f, depths, &ApproxConfig::default()).map_err(|e| e.to_string())?;
            check(r.certificates.is_empty(), || format!("{depths:?}: certificate emitted"))?;
            let h = r.halted.as_ref().ok_or("no refusal")?;
            check(h.refusal == Refusal::Percon { witness: 1 } && h.depth == depths[0], || {
                format!("{depths:?}: halted with {:?} at depth {}", h.refusal, h.depth)
            })?;
        }
        Ok(format!("refused with period 1 for schedules {schedules:?}"))
    };
    report(7, started, run());
}

fn succeeds(lambda: &DirectedGraph, f: &CantorMap, depths: &[usize]) -> Result<(), String> {
    let cfg = ApproxConfig::default();
    let r = approximate(lambda, f, depths, &cfg).map_err(|e| e.to_string())?;
    check(r.succeeded(), || format!("{lambda:?}: halted {:?}", r.halted))?;
    check(r.strictly_decreasing, || format!("{lambda:?}: totals not decreasing"))?;
    for c in &r.certificates {
        let chk = verify_certificate(lambda, f, c, &cfg).map_err(|e| e.to_string())?;
        check(chk.all(), || format!("{lambda:?} depth {}: {chk:?}", c.depth))?;
    }
    Ok(())
}

#[test]
fn criterion_8_fixed_point_and_full_shift_targets() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let mixing = [
            ("golden", catalog::golden_mean()),
            ("full2", catalog::full_shift()),
            ("full3", catalog::full_shift_3()),
            ("loop+triangle", catalog::loop_and_triangle()),
            ("2-3 cycles", catalog::two_three_cycles()),
            ("loop+4-cycle", catalog::loop_with_cycle(3)),
        ];
        // Targets with a fixed point.
        let targets = [("full shift map", catalog::full_shift_map()), ("golden shift map", catalog::golden_shift_map())];
        let mut runs = 0;
        for (ln, lambda) in &mixing {
            check(sft::is_mixing(lambda).unwrap().is_mixing(), || format!("{ln} is not mixing"))?;
            for (_, f) in &targets {
                succeeds(lambda, f, &[2, 3])?;
                runs += 1;
            }
        }
        // Any perfect example subshift, mixing or not, into the full shift.
        let mut any: Vec<(&str, DirectedGraph)> = mixing.to_vec();
        any.push(("bipartite star", catalog::bipartite_star()));
        for (ln, lambda) in &any {
            check(sft::is_perfect(lambda), || format!("{ln} is not perfect"))?;
            succeeds(lambda, &catalog::full_shift_map(), &[1, 2, 3])?;
            runs += 1;
        }
        Ok(format!("{runs} end-to-end runs, every certificate re-verified"))
    };
    report(8, started, run());
}

#[test]
fn criterion_9_degenerate_inputs() {
    let started = Instant::now();
    let run = || -> Result<String, String> {
        let r = approximate(&catalog::full_shift(), &catalog::identity_map(), &[1, 2], &ApproxConfig::default())
            .map_err(|e| e.to_string())?;
        let h = r.halted.as_ref().ok_or("identity map accepted")?;
        check(matches!(h.refusal, Refusal::NotChainMixing { depth: 1, .. }) && h.depth == 1, || {
            format!("identity: {:?}", h.refusal)
        })?;
        check(
            matches!(catalog::identity_map().check_chain_mixing(1).unwrap().failure, Some(ref f) if f.depth == 1),
            || "chain mixing check accepts the identity".into(),
        )?;

        let e = build_markers(&catalog::single_loop(), &MarkerConfig::new(2, 5)).err();
        check(matches!(e, Some(Error::Refused(Refusal::NotPerfect { .. }))), || format!("single loop: {e:?}"))?;
        let r = approximate(&catalog::single_loop(), &catalog::full_shift_map(), &[2], &ApproxConfig::default())
            .map_err(|e| e.to_string())?;
        check(r.halted.is_some() && r.certificates.is_empty(), || "single loop accepted".into())?;

        let two_cycle = catalog::two_cycle();
        let sigma = catalog::full_shift();
        let e = compile_factor(&two_cycle, &sigma, &sft::words(&sigma, 1), &FactorConfig::default()).err();
        check(matches!(e, Some(Error::Refused(Refusal::FinitePeriodic))), || format!("two cycle: {e:?}"))?;
        let r = approximate(&two_cycle, &catalog::full_shift_map(), &[2], &ApproxConfig::default())
            .map_err(|e| e.to_string())?;
        check(matches!(r.halted.as_ref().map(|h| &h.refusal), Some(Refusal::FinitePeriodic)), || {
            format!("two cycle in the pipeline: {:?}", r.halted)
        })?;
        check(matches!(sft::is_mixing(&two_cycle).unwrap(), MixingVerdict::NotMixing { .. }), || "".into())?;
        Ok("identity: not chain mixing at depth 1; single loop: not perfect; two-cycle: finite periodic".into())
    };
    report(9, started, run());
}
