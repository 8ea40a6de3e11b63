//! Acceptance suite: end-to-end checks of the solvers, the centrality
//! engine and the reduction generators, each printed as one PASS/FAIL line
//! (run with `--nocapture` to see them). Every comparison is exact rational
//! equality; runtime ceilings are asserted. All sampling is seeded and
//! deterministic.

use std::time::{Duration, Instant};

use centrality_improve::exact::{solve_incident, solve_unrestricted};
use centrality_improve::fpt::{
    cluster_vertex_deletion, solve_betweenness_fpt, solve_closeness_fpt,
};
use centrality_improve::gen::{erdos_renyi, planted_cluster};
use centrality_improve::graph::{Distance, Graph};
use centrality_improve::instance::{verify, ImprovementInstance, ProblemKind};
use centrality_improve::reductions::{
    ds_to_betweenness, ds_to_closeness, ds_to_closeness_diam4, sc_to_directed_betweenness,
    sc_to_directed_closeness, sc_to_directed_closeness_diam4, solve_dominating_set_bf,
    solve_set_cover_bf, DominatingSetInstance, ReductionOutput, SetCoverInstance,
};
use centrality_improve::{
    betweenness, betweenness_naive, closeness, format_rational, ratio,
};

fn conclude(id: &str, pass: bool, detail: &str, elapsed: Duration, limit: Duration) {
    println!(
        "ACCEPTANCE {id}: {} — {detail} ({elapsed:.2?})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {detail}");
    assert!(
        elapsed < limit,
        "criterion {id} exceeded its runtime budget: {elapsed:?} >= {limit:?}"
    );
}

/// The six-vertex dominating-set input with solution {u2, u3}.
fn figure_input() -> Graph {
    Graph::undirected(6, &[(0, 2), (1, 3), (1, 4), (1, 5), (2, 3)]).unwrap()
}

fn is_yes(out: &ReductionOutput) -> bool {
    solve_incident(&out.instance).best.achieved >= out.instance.r
}

/// Deterministic random Set Cover instance. When `coverable` is set, every
/// element is planted into at least one set.
fn random_set_cover(n: usize, m: usize, k: usize, coverable: bool, seed: u64) -> SetCoverInstance {
    let mut x = seed ^ 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        x = x
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        x >> 33
    };
    let mut family: Vec<Vec<usize>> = Vec::with_capacity(m);
    for _ in 0..m {
        let mut set = Vec::new();
        for e in 0..n {
            if next() & 1 == 1 {
                set.push(e);
            }
        }
        if set.is_empty() {
            set.push(next() as usize % n);
        }
        family.push(set);
    }
    if coverable {
        let mut hit = vec![false; n];
        for set in &family {
            for &e in set {
                hit[e] = true;
            }
        }
        for (e, covered) in hit.iter().enumerate() {
            if !covered {
                let j = next() as usize % m;
                family[j].push(e);
            }
        }
    }
    SetCoverInstance::new(n, family, k).unwrap()
}

#[test]
fn criterion_01_figure_instance_reproduction() {
    let start = Instant::now();
    let ds = DominatingSetInstance::new(figure_input(), 2).unwrap();
    let out = ds_to_closeness(&ds);
    let mut pass = out.instance.r == ratio(4, 1);
    let report = solve_incident(&out.instance);
    pass &= report.best.achieved == ratio(4, 1);
    // The planted dominating set {u2, u3} is a witness achieving exactly 4.
    let (ok, achieved) = verify(&out.instance, &[(1, 6), (2, 6)]).unwrap();
    pass &= ok && achieved == ratio(4, 1);
    // The solver's own answer verifies at its reported value.
    let (ok, achieved) = verify(&out.instance, &report.best.additions).unwrap();
    pass &= ok && achieved == report.best.achieved;
    conclude(
        "01",
        pass,
        &format!(
            "r = {}, solver achieved {} and the planted witness achieves 4/1 exactly",
            format_rational(&out.instance.r),
            format_rational(&report.best.achieved)
        ),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

struct IncidentSuffices {
    checked: usize,
    undirected_mismatches: usize,
    directed_mismatches: usize,
    first_counterexample: String,
}

fn incident_suffices(
    kind_undirected: ProblemKind,
    kind_directed: ProblemKind,
    base_seed: u64,
) -> IncidentSuffices {
    let mut out = IncidentSuffices {
        checked: 0,
        undirected_mismatches: 0,
        directed_mismatches: 0,
        first_counterexample: String::new(),
    };
    for i in 0..200u64 {
        let directed = i >= 100;
        let n = 2 + (i % 7) as usize; // 2..=8
        let k = 1 + (i % 2) as usize;
        let p = 0.15 + 0.12 * ((i % 6) as f64);
        let g = erdos_renyi(n, p, directed, base_seed + i);
        let z = (i % n as u64) as usize;
        let kind = if directed { kind_directed } else { kind_undirected };
        let inst = ImprovementInstance::new(g.clone(), z, k, ratio(0, 1), kind).unwrap();
        let incident = solve_incident(&inst);
        let oracle = solve_unrestricted(&inst).expect("within the exhaustive guard");
        if incident.best.achieved != oracle.best.achieved {
            if directed {
                out.directed_mismatches += 1;
            } else {
                out.undirected_mismatches += 1;
            }
            if out.first_counterexample.is_empty() {
                out.first_counterexample = format!(
                    "first counterexample: directed={directed} n={n} k={k} z={z} \
                     arcs={:?}; incident reaches {} but {:?} reaches {}",
                    g.edges(),
                    format_rational(&incident.best.achieved),
                    oracle.best.additions,
                    format_rational(&oracle.best.achieved)
                );
            }
        }
        out.checked += 1;
    }
    out
}

#[test]
fn criterion_02_closeness_incident_suffices() {
    let start = Instant::now();
    let r = incident_suffices(
        ProblemKind::CLOSENESS,
        ProblemKind::DIRECTED_CLOSENESS,
        20_000,
    );
    let mismatches = r.undirected_mismatches + r.directed_mismatches;
    conclude(
        "02",
        mismatches == 0 && r.checked >= 200,
        &format!(
            "incident = unrestricted on {} closeness instances ({mismatches} mismatches)",
            r.checked
        ),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_03_betweenness_incident_suffices() {
    let start = Instant::now();
    let r = incident_suffices(
        ProblemKind::BETWEENNESS,
        ProblemKind::DIRECTED_BETWEENNESS,
        30_000,
    );
    let mismatches = r.undirected_mismatches + r.directed_mismatches;
    let detail = if mismatches == 0 {
        format!(
            "incident = unrestricted on {} betweenness instances",
            r.checked
        )
    } else {
        // Non-incident arcs can beat every incident set for directed
        // betweenness: an arc added downstream of z extends what z's
        // ancestors reach through z, which no single z-incident arc
        // replicates. The undirected half holds.
        format!(
            "undirected {}/100 mismatches, directed {}/100 mismatches; {}",
            r.undirected_mismatches, r.directed_mismatches, r.first_counterexample
        )
    };
    conclude(
        "03",
        mismatches == 0 && r.checked >= 200,
        &detail,
        start.elapsed(),
        Duration::from_secs(180),
    );
}

#[test]
fn criterion_04_closeness_fpt_matches_incident() {
    let start = Instant::now();
    let shapes: [&[usize]; 5] = [&[3, 4], &[2, 3, 4], &[5, 3], &[2, 2, 3], &[4, 4, 3]];
    let mut checked = 0;
    let mut mismatches = 0;
    let mut max_ell = 0;
    for i in 0..40u64 {
        let shape = shapes[(i % 5) as usize];
        let extra = (i % 3) as usize;
        let g = planted_cluster(shape, extra, 0.45, 0.35, 40_000 + i);
        let z = g.n() - 1;
        assert!(g.n() <= 14);
        let dec = cluster_vertex_deletion(&g, z).unwrap();
        assert!(dec.ell() <= 2, "planted graphs have deletion distance <= extra");
        max_ell = max_ell.max(dec.ell());
        for k in 1..=3usize {
            let inst =
                ImprovementInstance::new(g.clone(), z, k, ratio(0, 1), ProblemKind::CLOSENESS)
                    .unwrap();
            let fpt = solve_closeness_fpt(&inst, &dec).unwrap();
            let incident = solve_incident(&inst);
            if fpt.best.achieved != incident.best.achieved {
                mismatches += 1;
                eprintln!(
                    "criterion 04 mismatch: seed {} k {k} fpt {} incident {}",
                    40_000 + i,
                    format_rational(&fpt.best.achieved),
                    format_rational(&incident.best.achieved)
                );
            }
            checked += 1;
        }
    }
    conclude(
        "04",
        mismatches == 0 && checked >= 100 && max_ell == 2,
        &format!(
            "closeness fpt = incident on {checked} planted instances (deletion distance up to {max_ell})"
        ),
        start.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_05_betweenness_fpt_matches_incident() {
    let start = Instant::now();
    let shapes: [&[usize]; 4] = [&[3, 4], &[2, 3], &[3, 3], &[2, 2, 2]];
    let mut checked = 0;
    let mut mismatches = 0;
    let mut max_ell = 0;
    for i in 0..30u64 {
        let shape = shapes[(i % 4) as usize];
        let extra = (i % 3) as usize;
        let g = planted_cluster(shape, extra, 0.5, 0.35, 50_000 + i);
        let z = g.n() - 1;
        assert!(g.n() <= 10);
        let dec = cluster_vertex_deletion(&g, z).unwrap();
        assert!(dec.ell() <= 2);
        max_ell = max_ell.max(dec.ell());
        for k in 1..=2usize {
            let inst = ImprovementInstance::new(
                g.clone(),
                z,
                k,
                ratio(0, 1),
                ProblemKind::BETWEENNESS,
            )
            .unwrap();
            let fpt = solve_betweenness_fpt(&inst, &dec).unwrap();
            let incident = solve_incident(&inst);
            if fpt.best.achieved != incident.best.achieved {
                mismatches += 1;
                eprintln!(
                    "criterion 05 mismatch: seed {} k {k} fpt {} incident {}",
                    50_000 + i,
                    format_rational(&fpt.best.achieved),
                    format_rational(&incident.best.achieved)
                );
            }
            checked += 1;
        }
    }
    conclude(
        "05",
        mismatches == 0 && checked >= 50 && max_ell == 2,
        &format!(
            "betweenness fpt = incident on {checked} planted instances (deletion distance up to {max_ell})"
        ),
        start.elapsed(),
        Duration::from_secs(600),
    );
}

/// Shared driver for the Dominating Set round-trips: samples seeded random
/// graphs with k <= n (a dominating set of size > n never makes sense) and
/// compares the source oracle's answer with the improvement decision.
fn ds_round_trip(
    id: &str,
    samples: u64,
    max_n: usize,
    fixed_k: Option<usize>,
    reduce: impl Fn(&DominatingSetInstance) -> ReductionOutput,
    base_seed: u64,
) {
    let start = Instant::now();
    let mut checked = 0;
    let mut mismatches = 0;
    let mut first = String::new();
    for i in 0..samples {
        let k = fixed_k.unwrap_or(1 + (i % 2) as usize);
        let n = k.max(1) + (i as usize % (max_n - k.max(1) + 1));
        let p = 0.15 + 0.14 * ((i % 6) as f64);
        let g = erdos_renyi(n, p, false, base_seed + i);
        let have_ds = solve_dominating_set_bf(&g, k).unwrap().is_some();
        let out = reduce(&DominatingSetInstance::new(g.clone(), k).unwrap());
        let yes = is_yes(&out);
        if yes != have_ds {
            mismatches += 1;
            if first.is_empty() {
                first = format!(
                    "first mismatch: n={n} k={k} edges={:?} source says {have_ds}, \
                     improvement says {yes} (r = {})",
                    g.edges(),
                    format_rational(&out.instance.r)
                );
            }
        }
        checked += 1;
    }
    let detail = if mismatches == 0 {
        format!("source oracle and improvement decision agree on all {checked} samples")
    } else {
        format!("{mismatches}/{checked} disagreements; {first}")
    };
    conclude(id, mismatches == 0, &detail, start.elapsed(), Duration::from_secs(300));
}

/// Shared driver for the Set Cover round-trips with k <= m (choosing more
/// sets than exist never makes sense).
fn sc_round_trip(
    id: &str,
    samples: u64,
    max_n: usize,
    max_m: usize,
    coverable: bool,
    reduce: impl Fn(&SetCoverInstance) -> ReductionOutput,
    base_seed: u64,
) {
    let start = Instant::now();
    let mut checked = 0;
    let mut mismatches = 0;
    let mut first = String::new();
    let mut i = 0u64;
    while checked < samples {
        i += 1;
        let n = 1 + (i as usize % max_n);
        let m = 1 + ((i / 4) as usize % max_m);
        let k = 1 + (i % 2) as usize;
        if k > m {
            continue;
        }
        let sc = random_set_cover(n, m, k, coverable, base_seed + i);
        let cover = solve_set_cover_bf(&sc).unwrap().is_some();
        let out = reduce(&sc);
        let yes = is_yes(&out);
        if yes != cover {
            mismatches += 1;
            if first.is_empty() {
                first = format!(
                    "first mismatch: n={n} m={m} k={k} family={:?} source says {cover}, \
                     improvement says {yes} (r = {})",
                    sc.family,
                    format_rational(&out.instance.r)
                );
            }
        }
        checked += 1;
    }
    let detail = if mismatches == 0 {
        format!("source oracle and improvement decision agree on all {checked} samples")
    } else {
        format!("{mismatches}/{checked} disagreements; {first}")
    };
    conclude(id, mismatches == 0, &detail, start.elapsed(), Duration::from_secs(300));
}

#[test]
fn criterion_06a_round_trip_isolated_target() {
    ds_round_trip("06a", 500, 6, None, ds_to_closeness, 61_000);
}

#[test]
fn criterion_06b_round_trip_low_diameter() {
    ds_round_trip("06b", 500, 6, None, ds_to_closeness_diam4, 62_000);
}

#[test]
fn criterion_06c_round_trip_directed_closeness() {
    sc_round_trip("06c", 300, 4, 4, false, sc_to_directed_closeness, 63_000);
}

#[test]
fn criterion_06d_round_trip_directed_closeness_diam4() {
    // Every element must be coverable: the strongly connected gadget keeps
    // all element vertices reachable, so an element in no set could
    // otherwise be patched by a direct arc, breaking the equivalence.
    sc_round_trip("06d", 300, 4, 4, true, sc_to_directed_closeness_diam4, 64_000);
}

#[test]
fn criterion_06e_round_trip_betweenness() {
    ds_round_trip(
        "06e",
        300,
        5,
        Some(2),
        |ds| ds_to_betweenness(ds).unwrap(),
        65_000,
    );
}

#[test]
fn criterion_06f_round_trip_directed_betweenness() {
    sc_round_trip("06f", 300, 3, 3, false, sc_to_directed_betweenness, 66_000);
}

#[test]
fn criterion_07_betweenness_engine_vs_naive() {
    let start = Instant::now();
    let mut checked_graphs = 0;
    let mut mismatches = 0;
    for i in 0..200u64 {
        let directed = i >= 100;
        let n = 2 + (i % 8) as usize; // 2..=9
        let p = 0.15 + 0.13 * ((i % 6) as f64);
        let g = erdos_renyi(n, p, directed, 70_000 + i);
        for z in 0..g.n() {
            if betweenness(&g, z).unwrap() != betweenness_naive(&g, z).unwrap() {
                mismatches += 1;
            }
        }
        checked_graphs += 1;
    }
    conclude(
        "07",
        mismatches == 0 && checked_graphs >= 200,
        &format!(
            "pair-splitting engine = path-enumeration oracle on {checked_graphs} graphs, every source"
        ),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_structural_gadget_checks() {
    let start = Instant::now();
    let mut pass = true;
    let mut notes: Vec<String> = Vec::new();

    // Betweenness gadget: diameter exactly 3, for any input.
    for i in 0..40u64 {
        let n = 1 + (i % 5) as usize;
        let k = 1 + (i % 3) as usize;
        if k > n {
            continue;
        }
        let g = erdos_renyi(n, 0.3, false, 80_000 + i);
        let out = ds_to_betweenness(&DominatingSetInstance::new(g, k).unwrap()).unwrap();
        if out.instance.graph.diameter() != Distance::Finite(3) {
            pass = false;
            notes.push(format!("betweenness gadget diameter != 3 at seed {i}"));
        }
    }

    // Low-diameter closeness gadget on bounded-degree inputs: H-index <= 4
    // and diameter <= 6. Sampled inputs keep maximum degree 3 (dropping
    // edges that would exceed it), which stays within the max-degree-4
    // input class the bound is stated for.
    for i in 0..40u64 {
        let n = 2 + (i % 5) as usize;
        let g = erdos_renyi(n, 0.5, false, 81_000 + i);
        let mut capped: Vec<(usize, usize)> = Vec::new();
        let mut deg = vec![0usize; n];
        for (u, v) in g.edges() {
            if deg[u] < 3 && deg[v] < 3 {
                deg[u] += 1;
                deg[v] += 1;
                capped.push((u, v));
            }
        }
        let g = Graph::undirected(n, &capped).unwrap();
        let out = ds_to_closeness_diam4(&DominatingSetInstance::new(g, 1 + (i % 2) as usize).unwrap());
        let gg = &out.instance.graph;
        if gg.h_index() > 4 {
            pass = false;
            notes.push(format!("diam4 gadget H-index {} > 4 at seed {i}", gg.h_index()));
        }
        match gg.diameter() {
            Distance::Finite(d) if d <= 6 => {}
            other => {
                pass = false;
                notes.push(format!("diam4 gadget diameter {other:?} at seed {i}"));
            }
        }
    }

    // Low-diameter closeness gadget on connected diameter-2 inputs:
    // diameter <= 4.
    let mut diam2_checked = 0;
    for i in 0..200u64 {
        let n = 3 + (i % 4) as usize;
        let g = erdos_renyi(n, 0.6, false, 82_000 + i);
        if !matches!(g.diameter(), Distance::Finite(d) if d <= 2 && d >= 1) {
            continue;
        }
        diam2_checked += 1;
        let out = ds_to_closeness_diam4(&DominatingSetInstance::new(g, 1).unwrap());
        match out.instance.graph.diameter() {
            Distance::Finite(d) if d <= 4 => {}
            other => {
                pass = false;
                notes.push(format!("diam4 gadget on diameter-2 input has diameter {other:?}"));
            }
        }
    }
    if diam2_checked < 20 {
        pass = false;
        notes.push("too few diameter-2 inputs sampled".into());
    }

    // Directed gadgets: acyclicity on arbitrary inputs, strong
    // connectivity of the relay gadget. The latter needs every element to
    // lie in some set: an element outside every set has no incoming arc at
    // all and can never be reached from z.
    for i in 0..40u64 {
        let n = 1 + (i % 4) as usize;
        let m = 1 + ((i / 4) % 4) as usize;
        let k = 1 + (i % 2) as usize;
        if k > m {
            continue;
        }
        let sc = random_set_cover(n, m, k, i % 2 == 0, 83_000 + i);
        if !sc_to_directed_closeness(&sc).instance.graph.is_acyclic() {
            pass = false;
            notes.push(format!("directed closeness gadget cyclic at seed {i}"));
        }
        if !sc_to_directed_betweenness(&sc).instance.graph.is_acyclic() {
            pass = false;
            notes.push(format!("directed betweenness gadget cyclic at seed {i}"));
        }
        let covered = random_set_cover(n, m, k, true, 84_000 + i);
        let strong = sc_to_directed_closeness_diam4(&covered);
        match strong.instance.graph.diameter() {
            Distance::Finite(d) if d <= 4 => {}
            other => {
                pass = false;
                notes.push(format!(
                    "strongly connected gadget has diameter {other:?} at seed {i}"
                ));
            }
        }
    }

    let detail = if notes.is_empty() {
        "diameter-3 betweenness gadget, H-index/diameter bounds, acyclicity and strong \
         connectivity all hold on every sample"
            .to_string()
    } else {
        notes.join("; ")
    };
    conclude("08", pass, &detail, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_09_closeness_monotone_in_1000_triples() {
    let start = Instant::now();
    let mut checked = 0;
    let mut violations = 0;
    let mut i = 0u64;
    while checked < 1000 {
        i += 1;
        let directed = i % 3 == 0;
        let n = 3 + (i % 8) as usize;
        let g = erdos_renyi(n, 0.3 + 0.05 * ((i % 7) as f64), directed, 90_000 + i);
        let z = (i as usize * 7) % n;
        let v = (0..n).find(|&v| v != z && !g.has_edge(z, v));
        let Some(v) = v else { continue };
        let pair = if directed { (z, v) } else { g.normalize_pair(z, v) };
        let before = closeness(&g, z).unwrap();
        let after = closeness(&g.add_edges(&[pair]).unwrap(), z).unwrap();
        if after < before {
            violations += 1;
        }
        checked += 1;
    }
    conclude(
        "09",
        violations == 0,
        &format!("adding an incident edge never lowered closeness across {checked} triples"),
        start.elapsed(),
        Duration::from_secs(60),
    );
}
