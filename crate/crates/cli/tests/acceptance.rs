//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use vminor::bellvm_reduction::{
    all_pad_matchings, build_h_graph, check_pad_ring, pad_pairs, pad_ring_graph,
};
use vminor::circle::{
    alternance_graph, enumerate_eulerian_tours, find_eulerian_tour, induced_word, restrict_word,
    DoubleOccurrenceWord,
};
use vminor::gadgets::{
    all_pairings, build_grid_gadget, random_pairing, route_pairing, GridGadget, Pairing, Terminal,
};
use vminor::instance::{
    cmd_reduce, cmd_solve, cmd_verify, random_4reg, CertificateFile, Instance, InstanceFile, Kind,
    SolveOptions, Verdict,
};
use vminor::oracles::{
    bell_target, decide_bellvm, decide_bellvm_via_tours, decide_edp, decide_edpdt, DEFAULT_BUDGET,
};
use vminor::quantum::{
    bell_target_state, cut_rank, fidelity, graph_state, hadamard, lc_unitary, replay_witness,
    schmidt_rank_profile, Complex64, StateVector,
};
use vminor::{EdgeId, LabeledGraph, MultiGraph, PairSet, VertexId};

type Outcome = Result<String, String>;

/// Certificates emitted by `cmd_solve` during criteria 4 and 5.
#[derive(Default)]
struct Emitted {
    checked: usize,
    failures: Vec<String>,
}

fn main() {
    let emitted = Mutex::new(Emitted::default());
    let mut sizes = Vec::new();
    let mut all_ok = true;
    let mut run = |id: u32, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let res = f();
        let el = t.elapsed();
        let (ok, detail) = match res {
            Ok(d) => match limit {
                Some(l) if el > l => (false, format!("{d}; took {el:.2?}, limit {l:.0?}")),
                _ => (true, d),
            },
            Err(d) => (false, d),
        };
        all_ok &= ok;
        println!(
            "{} criterion {id:>2} {name}: {detail} [{el:.2?}]",
            if ok { "PASS" } else { "FAIL" }
        );
    };

    run(1, "alternance example", Some(Duration::from_millis(50)), &mut c1);
    run(2, "LC involution and subword identity", Some(secs(10)), &mut c2);
    run(3, "grid gadget routing", Some(secs(60)), &mut c3);
    run(4, "grape + regularize soundness", Some(secs(300)), &mut || c4(&emitted));
    run(5, "bellvm reduction soundness", Some(secs(900)), &mut || c5(&emitted, &mut sizes));
    run(6, "padded graph size identities", None, &mut || c6(&sizes));
    run(7, "pad ring matchings", Some(secs(60)), &mut c7);
    run(8, "tour and orbit deciders agree", None, &mut c8);
    run(9, "quantum correspondence", Some(secs(300)), &mut c9);
    run(10, "CLI contract", None, &mut || c10(&emitted));

    if !all_ok {
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn v(s: &str) -> VertexId {
    VertexId::new(s)
}

fn c1() -> Outcome {
    let w = DoubleOccurrenceWord::parse("adcbaebced").map_err(|e| e.to_string())?;
    let g = w.alternance_graph();
    let want = LabeledGraph::new(
        ["a", "b", "c", "d", "e"],
        [("a", "b"), ("a", "c"), ("a", "d"), ("b", "e"), ("c", "e")],
    )
    .unwrap();
    ensure(g == want, || format!("got edges {:?}", g.edges()))?;
    Ok("adcbaebced gives ab ac ad be ce".into())
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn graph_from_mask(n: usize, mask: u64) -> LabeledGraph {
    let ls = labels(n);
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((ls[i].clone(), ls[j].clone()));
            }
            bit += 1;
        }
    }
    LabeledGraph::new(ls, edges).unwrap()
}

fn random_graph<R: Rng>(n: usize, rng: &mut R) -> LabeledGraph {
    let pairs = n * n.saturating_sub(1) / 2;
    graph_from_mask(n, rng.random::<u64>() & ((1u64 << pairs) - 1))
}

fn check_involution(g: &LabeledGraph) -> Result<(), String> {
    for u in g.vertices() {
        let back = g.local_complement(u).and_then(|h| h.local_complement(u)).map_err(|e| e.to_string())?;
        ensure(&back == g, || format!("LC at {u} twice changed {:?}", g.edges()))?;
    }
    Ok(())
}

fn c2() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=4 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            check_involution(&graph_from_mask(n, mask))?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let n = rng.random_range(1..=8);
        check_involution(&random_graph(n, &mut rng))?;
    }
    let mut words = 0;
    while words < 200 {
        let n = rng.random_range(1..=6);
        let (f, _) = random_4reg(n, 0, &mut rng).map_err(|e| e.to_string())?;
        let tour = find_eulerian_tour(&f).map_err(|e| e.to_string())?;
        let w = induced_word(&tour).map_err(|e| e.to_string())?;
        let full = w.alternance_graph();
        for _ in 0..4 {
            let keep: BTreeSet<VertexId> =
                f.vertices().iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
            let lhs = restrict_word(&w, &keep).alternance_graph();
            let rhs = full.induced_subgraph(&keep).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("subword identity fails on {w:?} keeping {keep:?}"))?;
        }
        words += 1;
    }
    Ok(format!(
        "{exhaustive} graphs on <=4 vertices, 500 random n<=8, {words} tours x 4 subsets"
    ))
}

fn check_routing(gg: &GridGadget, p: &Pairing) -> Result<(), String> {
    let r = route_pairing(gg, p).map_err(|e| e.to_string())?;
    let g = gg.graph();
    ensure(r.paths.len() == p.pairs().len(), || "path count".into())?;
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    for (w, &(a, b)) in r.paths.iter().zip(p.pairs()) {
        w.validate_trail(g).map_err(|e| e.to_string())?;
        let (la, lb) = (gg.label(a), gg.label(b));
        let ends = (w.start().clone(), w.end().clone());
        ensure(ends == (la.clone(), lb.clone()) || ends == (lb.clone(), la.clone()), || {
            format!("path {} does not join {la} and {lb}", w)
        })?;
        for e in &w.edges {
            ensure(used.insert(*e), || format!("edge {e} shared under {:?}", p.pairs()))?;
        }
    }
    ensure(used.len() == g.edge_count(), || {
        format!("{} of {} edges covered under {:?}", used.len(), g.edge_count(), p.pairs())
    })
}

fn c3() -> Outcome {
    let mut count = 0;
    for n in [2, 3] {
        let gg = build_grid_gadget(&v("x"), n).map_err(|e| e.to_string())?;
        for p in all_pairings(n) {
            check_routing(&gg, &p)?;
            count += 1;
        }
    }
    use Terminal::{Primed, Unprimed};
    let gg = build_grid_gadget(&v("x"), 6).map_err(|e| e.to_string())?;
    let mixed = Pairing::new(
        6,
        vec![
            (Unprimed(2), Primed(4)),
            (Unprimed(1), Unprimed(4)),
            (Primed(3), Primed(6)),
            (Unprimed(3), Primed(1)),
            (Unprimed(5), Primed(2)),
            (Unprimed(6), Primed(5)),
        ],
    )
    .map_err(|e| e.to_string())?;
    check_routing(&gg, &mixed)?;
    let r = route_pairing(&gg, &mixed).map_err(|e| e.to_string())?;
    let a: BTreeSet<&VertexId> = r.core[1].vertices.iter().collect();
    let meet: Vec<String> =
        r.core[2].vertices.iter().filter(|x| a.contains(x)).map(|x| x.to_string()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        check_routing(&gg, &random_pairing(6, &mut rng))?;
    }
    Ok(format!(
        "{count} exhaustive pairings (n=2,3), 1001 at n=6; unprimed/primed paths of the mixed example meet at {}",
        meet.join(",")
    ))
}

/// Random EDP instance with `G + D` of even degree everywhere.
fn random_edp<R: Rng>(rng: &mut R) -> (MultiGraph, MultiGraph) {
    let n = rng.random_range(3..=8);
    let ls = labels(n);
    let mut demand = MultiGraph::builder();
    let mut deg = vec![0usize; n];
    for _ in 0..rng.random_range(1..=3) {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        demand.edge(ls[a].clone(), ls[b].clone());
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut supply = MultiGraph::builder();
    for l in &ls {
        supply.vertex(l.clone());
    }
    for _ in 0..rng.random_range(n - 1..=n + 2) {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            supply.edge(ls[a].clone(), ls[b].clone());
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    let mut odd: Vec<usize> = (0..n).filter(|&i| deg[i] % 2 == 1).collect();
    odd.shuffle(rng);
    for c in odd.chunks(2) {
        supply.edge(ls[c[0]].clone(), ls[c[1]].clone());
    }
    (supply.build(), demand.build())
}

fn three_demand() -> (MultiGraph, MultiGraph) {
    let supply = MultiGraph::builder()
        .edge("a", "c")
        .edge("d", "b")
        .edge("b", "c")
        .edge("d", "e")
        .edge("e", "f")
        .build();
    let demand = MultiGraph::builder().edge("c", "a").edge("c", "d").edge("f", "d").build();
    (supply, demand)
}

fn solve_and_verify(f: &InstanceFile, emitted: &Mutex<Emitted>) -> Result<Verdict, String> {
    let r = cmd_solve(f, &SolveOptions { budget: DEFAULT_BUDGET, ..Default::default() })
        .map_err(|e| e.to_string())?;
    if let Some(c) = &r.certificate {
        let res = cmd_verify(f, c);
        let mut em = emitted.lock().unwrap();
        em.checked += 1;
        if let Err(e) = res {
            em.failures.push(format!("{}: {e}", f.name.as_deref().unwrap_or("?")));
        }
    }
    Ok(r.verdict)
}

fn c4(emitted: &Mutex<Emitted>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = vec![three_demand()];
    while cases.len() < 320 {
        cases.push(random_edp(&mut rng));
    }
    let results: Vec<Result<bool, String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (g, d))| {
            let direct = decide_edp(g, d).map_err(|e| e.to_string())?.is_yes();
            let f = InstanceFile::new(Instance::Edp { supply: g.clone(), demand: d.clone() })
                .named(format!("edp{i}"));
            let first = solve_and_verify(&f, emitted)?;
            ensure((first == Verdict::Yes) == direct, || format!("edp{i}: solve disagrees"))?;
            let red = cmd_reduce(&f, Kind::Edpdt).map_err(|e| format!("edp{i}: {e}"))?.instance;
            let verdict = solve_and_verify(&red.named(format!("edp{i}-edpdt")), emitted)?;
            ensure(verdict != Verdict::Truncated, || format!("edp{i}: truncated"))?;
            ensure((verdict == Verdict::Yes) == direct, || {
                format!("edp{i}: direct {direct}, reduced {verdict:?}")
            })?;
            Ok(direct)
        })
        .collect();
    let mut yes = 0;
    for r in &results {
        yes += usize::from(*r.as_ref().map_err(Clone::clone)?);
    }
    ensure(results[0] == Ok(true), || "three_demand instance is not yes".into())?;
    let no = results.len() - yes;
    ensure(yes > 0 && no > 0, || format!("not mixed: {yes} yes, {no} no"))?;
    Ok(format!("{} instances agree ({yes} yes, {no} no), incl. the 6-vertex 3-demand example", results.len()))
}

/// (|V(G)|, |E(G)|, |T|, |V(H)|, |E(H)|, H is 4-regular)
type Sizes = (usize, usize, usize, usize, usize, bool);

/// Two random components with the first pair split across them, so the
/// answer is no.
fn split_edpdt<R: Rng>(rng: &mut R) -> (MultiGraph, PairSet) {
    loop {
        let n1 = rng.random_range(2..=4);
        let n2 = rng.random_range(2..=8 - n1);
        let (a, pa) = random_4reg(n1, 1, rng).unwrap();
        let (b, pb) = random_4reg(n2, 1, rng).unwrap();
        let mut g = MultiGraph::builder();
        let tag = |p: &str, x: &VertexId| VertexId::new(format!("{p}{x}"));
        for (h, p) in [(&a, "a"), (&b, "b")] {
            for e in h.edge_ids() {
                let (x, y) = h.endpoints(e).unwrap();
                g.edge(tag(p, x), tag(p, y));
            }
        }
        let (a0, a1) = pa.pairs()[0].clone();
        let (b0, b1) = pb.pairs()[0].clone();
        let pairs = PairSet::new(vec![(tag("a", &a0), tag("b", &b0)), (tag("a", &a1), tag("b", &b1))]);
        if let Ok(p) = pairs {
            return (g.build(), p);
        }
    }
}

fn c5(emitted: &Mutex<Emitted>, sizes: &mut Vec<Sizes>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases = Vec::new();
    while cases.len() < 280 {
        let n = rng.random_range(2..=8);
        let k = rng.random_range(1..=3.min(n / 2));
        cases.push(random_4reg(n, k, &mut rng).map_err(|e| e.to_string())?);
    }
    while cases.len() < 320 {
        cases.push(split_edpdt(&mut rng));
    }
    let results: Vec<Result<(bool, Sizes), String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (g, t))| {
            let direct = decide_edpdt(g, t).map_err(|e| e.to_string())?.is_yes();
            let f = InstanceFile::new(Instance::Edpdt { graph: g.clone(), pairs: t.clone() })
                .named(format!("edpdt{i}"));
            let red = cmd_reduce(&f, Kind::Bellvm).map_err(|e| format!("edpdt{i}: {e}"))?.instance;
            let verdict = solve_and_verify(&red.named(format!("edpdt{i}-bellvm")), emitted)?;
            ensure(verdict != Verdict::Truncated, || format!("edpdt{i}: orbit truncated"))?;
            ensure((verdict == Verdict::Yes) == direct, || {
                format!("edpdt{i}: direct {direct}, reduced {verdict:?}")
            })?;
            let h = build_h_graph(g, t).map_err(|e| e.to_string())?;
            let s = (
                g.vertex_count(),
                g.edge_count(),
                t.len(),
                h.graph.vertex_count(),
                h.graph.edge_count(),
                h.graph.is_regular(4),
            );
            Ok((direct, s))
        })
        .collect();
    let mut yes = 0;
    for r in results {
        let (y, s) = r?;
        yes += usize::from(y);
        sizes.push(s);
    }
    let no = sizes.len() - yes;
    ensure(yes > 0 && no > 0, || format!("not mixed: {yes} yes, {no} no"))?;
    Ok(format!("{} instances agree ({yes} yes, {no} no), no truncation at budget {DEFAULT_BUDGET}", sizes.len()))
}

fn c6(sizes: &[Sizes]) -> Outcome {
    ensure(!sizes.is_empty(), || "no instances from criterion 5".into())?;
    for &(nv, ne, k, hv, he, reg) in sizes {
        ensure(hv == nv + 2 * k, || format!("|V(H)| = {hv}, |V(G)| = {nv}, |T| = {k}"))?;
        ensure(he == ne + 5 * k, || format!("|E(H)| = {he}, |E(G)| = {ne}, |T| = {k}"))?;
        ensure(reg, || "H is not 4-regular".into())?;
    }
    Ok(format!(
        "{} instances: |V(H)| = |V(G)| + 2|T|, |E(H)| = |E(G)| + 5|T| (2 terminal edges, a double edge and a ring edge per pair), 4-regular",
        sizes.len()
    ))
}

fn c7() -> Outcome {
    let mut configs = 0;
    let mut tours = 0;
    for k in 1..=3 {
        let target = bell_target(&pad_pairs(k));
        for m in all_pad_matchings(k) {
            let h = pad_ring_graph(k, &m).map_err(|e| e.to_string())?;
            let mut verdicts = BTreeSet::new();
            for t in enumerate_eulerian_tours(&h).map_err(|e| e.to_string())? {
                let a = alternance_graph(t.letters()).map_err(|e| e.to_string())?;
                verdicts.insert(a == target);
                tours += 1;
            }
            ensure(verdicts.len() == 1, || format!("k={k} {m:?}: verdict depends on the tour"))?;
            let want = check_pad_ring(k, &m).map_err(|e| e.to_string())?;
            ensure(verdicts.contains(&want), || format!("k={k} {m:?}: predicate says {want}"))?;
            configs += 1;
        }
    }
    Ok(format!("{configs} closing matchings for k<=3, {tours} tours, tour-independent"))
}

/// Every 4-regular multigraph (loops and parallel edges allowed) on `n`
/// labeled vertices, one per edge multiset.
fn all_4_regular(n: usize) -> Vec<MultiGraph> {
    fn rec(n: usize, i: usize, j: usize, rem: &mut [usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        if j == n {
            if rem[i] == 0 {
                rec(n, i + 1, i + 1, rem, cur, out);
            }
            return;
        }
        let max = if i == j { rem[i] / 2 } else { rem[i].min(rem[j]) };
        for m in 0..=max {
            if i == j {
                rem[i] -= 2 * m;
            } else {
                rem[i] -= m;
                rem[j] -= m;
            }
            cur.extend(std::iter::repeat_n((i, j), m));
            rec(n, i, j + 1, rem, cur, out);
            cur.truncate(cur.len() - m);
            if i == j {
                rem[i] += 2 * m;
            } else {
                rem[i] += m;
                rem[j] += m;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, 0, &mut vec![4; n], &mut Vec::new(), &mut out);
    let ls = labels(n);
    out.into_iter()
        .map(|es| {
            let mut b = MultiGraph::builder();
            for l in &ls {
                b.vertex(l.clone());
            }
            for (a, c) in es {
                b.edge(ls[a].clone(), ls[c].clone());
            }
            b.build()
        })
        .filter(|g| g.is_connected())
        .collect()
}

fn two_pair_sets(vs: &[VertexId]) -> Vec<PairSet> {
    let mut out = Vec::new();
    let n = vs.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [&vs[a], &vs[b], &vs[c], &vs[d]];
                    for (x, y, z, w) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
                        out.push(
                            PairSet::new(vec![(q[x].clone(), q[y].clone()), (q[z].clone(), q[w].clone())])
                                .unwrap(),
                        );
                    }
                }
            }
        }
    }
    out
}

fn c8() -> Outcome {
    let mut graphs = 0;
    let mut checks = 0;
    let mut yes = 0;
    for n in 1..=5 {
        for f in all_4_regular(n) {
            graphs += 1;
            let tours = enumerate_eulerian_tours(&f).map_err(|e| e.to_string())?;
            let mut circles: Vec<LabeledGraph> = Vec::new();
            for t in &tours {
                let a = alternance_graph(t.letters()).map_err(|e| e.to_string())?;
                if !circles.contains(&a) {
                    circles.push(a);
                }
            }
            for b in two_pair_sets(f.vertices()) {
                let via = decide_bellvm_via_tours(&f, &b).map_err(|e| e.to_string())?.is_yes();
                yes += usize::from(via);
                for a in &circles {
                    let d = decide_bellvm(a, &b, DEFAULT_BUDGET).map_err(|e| e.to_string())?.is_yes();
                    ensure(d == via, || format!("{:?} {:?}: tours {via}, orbit {d}", f.vertices(), b))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!(
        "{graphs} connected 4-regular multigraphs on <=5 vertices, {checks} (circle graph, pair set) checks, {yes} yes pair sets"
    ))
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 1.0;
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let g = random_graph(n, &mut rng);
        let s = graph_state(&g).map_err(|e| e.to_string())?;
        for u in g.vertices() {
            let lhs = lc_unitary(&g, u, &s).map_err(|e| e.to_string())?;
            let rhs = graph_state(&g.local_complement(u).unwrap()).map_err(|e| e.to_string())?;
            worst = worst.min(fidelity(&lhs, &rhs).map_err(|e| e.to_string())?);
        }
    }
    ensure(worst >= 1.0 - 1e-10, || format!("LC fidelity {worst}"))?;

    let k2 = graph_state(&LabeledGraph::new(["a", "b"], [("a", "b")]).unwrap()).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let mut phi = StateVector::from_amplitudes(
        vec![v("a"), v("b")],
        vec![Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)],
    )
    .map_err(|e| e.to_string())?;
    phi.apply_to(&v("b"), &hadamard()).map_err(|e| e.to_string())?;
    let dev = k2
        .amplitudes()
        .iter()
        .zip(phi.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    ensure(dev <= 1e-12, || format!("K2 vs H_b Phi+ deviates by {dev}"))?;

    let mut replays = 0;
    let mut tries = 0;
    while replays < 60 {
        tries += 1;
        ensure(tries < 10_000, || "too few yes instances".into())?;
        let n = rng.random_range(2..=6);
        let g = random_graph(n, &mut rng);
        let mut vs = g.vertices().to_vec();
        vs.shuffle(&mut rng);
        let k = rng.random_range(1..=n / 2);
        let b = PairSet::new(vs[..2 * k].chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
            .unwrap();
        let Some(w) = decide_bellvm(&g, &b, DEFAULT_BUDGET).map_err(|e| e.to_string())?.witness else {
            continue;
        };
        let s = replay_witness(&g, &w, &mut rng).map_err(|e| e.to_string())?;
        let target = bell_target(&b);
        for (side, r) in schmidt_rank_profile(&s) {
            let want = 1usize << cut_rank(&target, &side);
            ensure(r == want, || format!("cut {side:?}: rank {r}, want {want}"))?;
        }
        let ideal = bell_target_state(&b).map_err(|e| e.to_string())?;
        ensure(ideal.labels().len() == s.labels().len(), || "qubit count after replay".into())?;
        replays += 1;
    }
    Ok(format!(
        "LC fidelity >= {worst:.15} over 200 graphs; |K2> = H_b|Phi+> within {dev:.1e}; {replays} witness replays match the Bell-pair Schmidt profile"
    ))
}

fn c10(emitted: &Mutex<Emitted>) -> Outcome {
    let (supply, demand) = three_demand();
    let edp = InstanceFile::new(Instance::Edp { supply, demand }).named("three_demand");
    let edpdt = cmd_reduce(&edp, Kind::Edpdt).map_err(|e| e.to_string())?.instance;
    let bell = cmd_reduce(&edpdt, Kind::Bellvm).map_err(|e| e.to_string())?.instance;
    for f in [&edp, &edpdt, &bell] {
        let back = InstanceFile::from_json(&f.to_json()).map_err(|e| e.to_string())?;
        ensure(&back == f && back.to_json() == f.to_json(), || format!("{} round trip", f.instance.kind()))?;
    }
    let em = emitted.lock().unwrap();
    ensure(em.failures.is_empty(), || format!("certificates rejected: {:?}", em.failures))?;
    ensure(em.checked > 0, || "no certificates emitted".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("bell.json");
    let g = LabeledGraph::new(["a", "x", "b", "c", "d"], [("a", "x"), ("x", "b"), ("c", "d")]).unwrap();
    let pairs = PairSet::from_labels([("a", "b"), ("c", "d")]).map_err(|e| e.to_string())?;
    std::fs::write(&path, InstanceFile::new(Instance::Bellvm { graph: g, pairs }).to_json())
        .map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_vminor");
    let out = Command::new(bin)
        .args(["solve", path.to_str().unwrap(), "--budget", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(2), || format!("truncated solve exited {:?}", out.status.code()))?;
    let cert_path = dir.path().join("cert.json");
    let out = Command::new(bin)
        .args(["solve", path.to_str().unwrap(), "--cert", cert_path.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("solve exited {:?}", out.status.code()))?;
    CertificateFile::from_json(&std::fs::read_to_string(&cert_path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let verify = Command::new(bin)
        .args(["verify", path.to_str().unwrap(), cert_path.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(verify.status.code() == Some(0), || "verify rejected solve's certificate".into())?;
    Ok(format!(
        "3 instance kinds round-trip; {} certificates from criteria 4-5 verify; budget 1 exits 2",
        em.checked
    ))
}
