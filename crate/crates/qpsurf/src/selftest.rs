//! Self-verification suite run by `qpsurf selftest`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qpsurf_core::{
    alexander_from_braid, alexander_from_seifert, expand_bands, nabla, pad_into_nabla, q_rep, quasipositize,
    quasipositize_handle_subsurface, seifert_matrix, verify_fiber, BandRepresentation, BraidWord, BraidedSurface,
    CombedGraph, DiskPart, Letter, Tooth,
};
use qpsurf_core::graph::Arc;

use crate::{gen, oracle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn fail<E: std::fmt::Display>(ctx: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{ctx}: {e}")
}

pub fn euler_characteristics() -> Outcome {
    for n in 2..=6usize {
        let expected = 1 - ((n - 1) * (n - 1)) as i64;
        let q = BraidedSurface::new(q_rep(n).map_err(fail(n))?).euler_characteristic();
        let d = BraidedSurface::new(nabla(n).map_err(fail(n))?).euler_characteristic();
        if q != expected || d != expected {
            return Err(format!("n={n}: chi(q)={q}, chi(nabla)={d}, expected {expected}"));
        }
    }
    Ok("n=2..6".into())
}

pub fn fibers() -> Outcome {
    for n in 2..=4 {
        verify_fiber(n).map_err(fail(format!("n={n}")))?;
    }
    Ok("n=2..4".into())
}

pub fn cross_oracle(rng: &mut ChaCha8Rng, samples: usize, positive: bool) -> Outcome {
    for _ in 0..samples {
        let r = gen::connected_rep(rng, 4, 5, positive);
        let a = alexander_from_seifert(&seifert_matrix(&r));
        let b = alexander_from_braid(&r.beta()).map_err(fail(format!("{r:?}")))?;
        if !a.eq_up_to_units(&b) {
            return Err(format!("{r:?}: seifert {a}, burau {b}"));
        }
    }
    Ok(format!("{samples} connected representations"))
}

/// Every positive word on at most 4 strands with at most 6 letters.
pub fn padding() -> Outcome {
    let mut count = 0;
    for m in 2..=4usize {
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(letters) = stack.pop() {
            let w = BraidWord::new(m, letters.iter().map(|&i| Letter::pos(i)).collect()).map_err(fail("word"))?;
            let p = pad_into_nabla(&w).map_err(fail(&w))?;
            let target = BraidedSurface::new(BandRepresentation::from_word(&w)).summary();
            let got = p.graph.neighborhood_summary().map_err(fail(&w))?;
            if !p.graph.is_full().map_err(fail(&w))? || got != target {
                return Err(format!("{w}: summary {got}, expected {target}"));
            }
            count += 1;
            if letters.len() < 6 {
                for i in 1..m {
                    let mut next = letters.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
        }
    }
    Ok(format!("{count} positive words"))
}

pub fn expansion(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    for _ in 0..samples {
        let r = gen::rep(rng, 5, 5, true);
        let e = expand_bands(&r).map_err(fail(format!("{r:?}")))?;
        let target = BraidedSurface::new(r.clone()).summary();
        let got = e.graph.neighborhood_summary().map_err(fail(format!("{r:?}")))?;
        if !e.word.is_positive() || !e.graph.is_full().map_err(fail(format!("{r:?}")))? || got != target {
            return Err(format!("{r:?}: summary {got}, expected {target}"));
        }
    }
    Ok(format!("{samples} quasipositive representations"))
}

pub fn calibration(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    for _ in 0..samples {
        let r = gen::rep(rng, 5, 6, false);
        let s = BraidedSurface::new(r.clone());
        let all: Vec<usize> = (1..=s.handles()).collect();
        let got = s.handle_spine(&all).and_then(|g| g.neighborhood_summary()).map_err(fail(format!("{r:?}")))?;
        if got != s.summary() {
            return Err(format!("{r:?}: spine {got}, surface {}", s.summary()));
        }
    }
    Ok(format!("{samples} representations"))
}

fn step_through(g: &CombedGraph) -> Result<usize, String> {
    let ctx = || format!("{g}");
    let summary = g.neighborhood_summary().map_err(fail(ctx()))?;
    let budget = g.arc_count();
    let mut cur = g.clone();
    let mut steps = 0;
    while let Some(&site) = cur.eligible_sites().first() {
        let next = cur.whitehead_step(site).map_err(fail(ctx()))?;
        if next.arc_count() + 1 != cur.arc_count() {
            return Err(format!("{}: step at {site} did not remove exactly one arc", ctx()));
        }
        if next.neighborhood_summary().map_err(fail(ctx()))? != summary {
            return Err(format!("{}: step at {site} changed the summary", ctx()));
        }
        if !next.is_full().map_err(fail(ctx()))? {
            return Err(format!("{}: step at {site} lost fullness", ctx()));
        }
        cur = next;
        steps += 1;
        if steps > budget {
            return Err(format!("{}: more steps than arcs", ctx()));
        }
    }
    if cur != g.reduce().map_err(fail(ctx()))? {
        return Err(format!("{}: reduce disagrees with stepping", ctx()));
    }
    Ok(steps)
}

pub fn whitehead(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    let hosts = [q_rep(2), q_rep(3), nabla(3)];
    let mut total = 0;
    for k in 0..samples {
        let host = match &hosts[k % hosts.len()] {
            Ok(h) => h.clone(),
            Err(e) => return Err(e.to_string()),
        };
        let g = gen::full_graph(rng, &host, 8, 12);
        total += step_through(&g)?;
    }
    Ok(format!("{samples} graphs, {total} steps"))
}

pub fn quasipositization(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    for n in 2..=3 {
        let k = q_rep(n).map_err(fail(n))?.len();
        let all: Vec<usize> = (1..=k).collect();
        let r = quasipositize_handle_subsurface(n, &all).map_err(fail(format!("spine of q_{n}")))?;
        let surface = BraidedSurface::new(q_rep(n).map_err(fail(n))?).summary();
        let a = alexander_from_braid(&r.output.beta()).map_err(fail(n))?;
        let b = alexander_from_braid(&nabla(n).map_err(fail(n))?.beta()).map_err(fail(n))?;
        if !r.output.is_quasipositive() || r.output_summary != surface || !a.eq_up_to_units(&b) {
            return Err(format!("spine of q_{n}: output {:?}", r.output));
        }
    }
    for k in 0..samples {
        let n = 3 + k % 2;
        let host = q_rep(n).map_err(fail(n))?;
        let g = if k % 4 < 2 {
            BraidedSurface::new(host.clone()).handle_spine(&gen::subset(rng, host.len())).map_err(fail(n))?
        } else {
            gen::full_graph(rng, &host, 4, 24)
        };
        let r = quasipositize(n, &g).map_err(fail(&g))?;
        let before = g.neighborhood_summary().map_err(fail(&g))?;
        if !r.output.is_quasipositive() || r.output_summary != before {
            return Err(format!("{g}: output {:?}", r.output));
        }
    }
    Ok(format!("spines of q_2, q_3 and {samples} subsurfaces"))
}

/// Two arcs through one 1-handle of `S(q_2)`, both pairs of ends on a single comb.
pub fn bigon() -> qpsurf_core::Result<CombedGraph> {
    let comb = || vec![DiskPart::Comb(vec![Tooth::ArcEnd { handle: 1, slot: 1 }, Tooth::ArcEnd { handle: 1, slot: 2 }])];
    let arcs = vec![Arc { handle: 1, slot_i: 1, slot_j: 2 }, Arc { handle: 1, slot_i: 2, slot_j: 1 }];
    CombedGraph::new(q_rep(2)?, vec![comb(), comb()], arcs)
}

pub fn fullness(rng: &mut ChaCha8Rng, samples: usize) -> Outcome {
    let bigon = bigon().map_err(fail("bigon"))?;
    if bigon.is_full().map_err(fail("bigon"))? {
        return Err("bigon reported full".into());
    }
    for n in 2..=4 {
        let s = BraidedSurface::new(q_rep(n).map_err(fail(n))?);
        let g = s.handle_spine(&(1..=s.handles()).collect::<Vec<_>>()).map_err(fail(n))?;
        if !g.is_full().map_err(fail(n))? {
            return Err(format!("spine of q_{n} reported not full"));
        }
    }
    let mut nonfull = 0;
    for _ in 0..samples {
        let host = gen::rep(rng, 3, 4, false);
        let g = gen::any_graph(rng, &host, 3, 0.85);
        if g.arc_count() > 14 {
            continue;
        }
        let fast = g.is_full().map_err(fail(&g))?;
        if fast != oracle::is_full_brute_force(&g) {
            return Err(format!("{g}: detector says {fast}"));
        }
        nonfull += usize::from(!fast);
    }
    Ok(format!("{samples} random graphs, {nonfull} not full"))
}

/// Runs every check with generators seeded from `seed`.
pub fn run_all(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut record = |name: &'static str, r: Outcome| {
        let (passed, detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        out.push(Check { name, passed, detail });
    };
    record("euler_characteristic_identity", euler_characteristics());
    record("fiber_invariants", fibers());
    record("seifert_vs_burau_quasipositive", cross_oracle(&mut rng, 200, true));
    record("seifert_vs_burau_mixed", cross_oracle(&mut rng, 100, false));
    record("padding_into_nabla", padding());
    record("band_expansion", expansion(&mut rng, 200));
    record("spine_self_calibration", calibration(&mut rng, 300));
    record("whitehead_reduction", whitehead(&mut rng, 200));
    record("quasipositization", quasipositization(&mut rng, 100));
    record("fullness_detector", fullness(&mut rng, 100));
    out
}
