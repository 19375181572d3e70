//! Brute-force fullness check, independent of the cycle walker in the core crate.

use std::collections::{BTreeMap, VecDeque};

use qpsurf_core::{CombedGraph, DiskPart, Tooth};

/// Abstract multigraph of a combed graph: vertex per part, edge per arc, with the
/// arc's 1-handle and its endpoints on the `i` and `j` sides.
fn edges(g: &CombedGraph) -> (usize, Vec<(usize, usize, usize)>) {
    let mut owner = BTreeMap::new();
    let mut v = 0;
    for (s, parts) in g.disks().iter().enumerate() {
        for part in parts {
            if let DiskPart::Comb(teeth) = part {
                for t in teeth {
                    if let Tooth::ArcEnd { handle, slot } = *t {
                        owner.insert((s + 1, handle, slot), v);
                    }
                }
            }
            v += 1;
        }
    }
    let es = g
        .arcs()
        .iter()
        .map(|a| {
            let b = g.host().band(a.handle);
            (a.handle, owner[&(b.i, a.handle, a.slot_i)], owner[&(b.j, a.handle, a.slot_j)])
        })
        .collect();
    (v, es)
}

/// Co-tree indicator for a BFS spanning forest of the host's disk graph, rooted at the highest disk.
fn cotree(g: &CombedGraph) -> Vec<bool> {
    let n = g.host().disks();
    let k = g.host().handles();
    let mut adj = vec![Vec::new(); n + 1];
    for t in 1..=k {
        let b = g.host().band(t);
        adj[b.i].push((t, b.j));
        adj[b.j].push((t, b.i));
    }
    let mut tree = vec![false; k + 1];
    let mut seen = vec![false; n + 1];
    for root in (1..=n).rev() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(t, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    tree[t] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    tree.iter().map(|&b| !b).collect()
}

/// Whether every simple cycle of `g` carries a nontrivial reduced word.
/// Enumerates all arc subsets, so keep graphs to about twenty arcs.
pub fn is_full_brute_force(g: &CombedGraph) -> bool {
    let (nv, es) = edges(g);
    let free = cotree(g);
    let m = es.len();
    assert!(m <= 24, "too many arcs for exhaustive search");
    for mask in 1u32..(1u32 << m) {
        let chosen: Vec<usize> = (0..m).filter(|&e| mask & (1 << e) != 0).collect();
        let mut deg = vec![0usize; nv];
        for &e in &chosen {
            deg[es[e].1] += 1;
            deg[es[e].2] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        // walk the cycle from the first chosen edge; reject if it does not use every chosen edge
        let mut used = vec![false; m];
        let (_, start, _) = es[chosen[0]];
        let mut at = start;
        let mut word: Vec<(usize, i8)> = Vec::new();
        let mut steps = 0;
        while let Some(&e) = chosen.iter().find(|&&e| !used[e] && (es[e].1 == at || es[e].2 == at)) {
            used[e] = true;
            steps += 1;
            let (t, u, v) = es[e];
            let forward = u == at;
            at = if forward { v } else { u };
            if free[t] {
                let s = if forward { 1 } else { -1 };
                if word.last() == Some(&(t, -s)) {
                    word.pop();
                } else {
                    word.push((t, s));
                }
            }
        }
        if steps != chosen.len() || at != start {
            continue;
        }
        while word.len() >= 2 && word[0].0 == word[word.len() - 1].0 && word[0].1 == -word[word.len() - 1].1 {
            word.pop();
            word.remove(0);
        }
        if word.is_empty() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpsurf_core::{q_rep, BraidedSurface};

    #[test]
    fn spine_is_full_and_bigon_is_not() {
        let s = BraidedSurface::new(q_rep(3).unwrap());
        let all: Vec<usize> = (1..=s.handles()).collect();
        assert!(is_full_brute_force(&s.handle_spine(&all).unwrap()));

        let bigon: crate::json::GraphDoc = serde_json::from_str(
            r#"{"host":{"strands":2,"bands":[[1,2,1],[1,2,1]]},
                "disks":[[{"comb":[{"arc_end":[1,1]},{"arc_end":[1,2]}]}],[{"comb":[{"arc_end":[1,1]},{"arc_end":[1,2]}]}]],
                "arcs":[[1,1,2],[1,2,1]]}"#,
        )
        .unwrap();
        let g = CombedGraph::try_from(&bigon).unwrap();
        assert!(!is_full_brute_force(&g));
    }
}
