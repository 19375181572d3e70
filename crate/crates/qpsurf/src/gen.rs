//! Seeded random generators for braid words, band representations and combed graphs.

use rand::Rng;

use qpsurf_core::graph::Arc;
use qpsurf_core::{
    BandRepresentation, BraidWord, BraidedSurface, CombedGraph, DiskPart, EmbeddedBand, Letter, Sign, Tooth,
};

fn sign(rng: &mut impl Rng, positive: bool) -> Sign {
    if positive || rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Word on `2..=max_n` strands with `0..=max_len` letters.
pub fn word(rng: &mut impl Rng, max_n: usize, max_len: usize, positive: bool) -> BraidWord {
    let n = rng.gen_range(2..=max_n);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| Letter { index: rng.gen_range(1..n), sign: sign(rng, positive) }).collect();
    BraidWord::new(n, letters).expect("indices in range")
}

/// Representation on `2..=max_n` strands with `0..=max_k` bands.
pub fn rep(rng: &mut impl Rng, max_n: usize, max_k: usize, positive: bool) -> BandRepresentation {
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(0..=max_k);
    rep_with(rng, n, k, positive)
}

pub fn rep_with(rng: &mut impl Rng, n: usize, k: usize, positive: bool) -> BandRepresentation {
    let bands = (0..k)
        .map(|_| {
            let i = rng.gen_range(1..n);
            let j = rng.gen_range(i + 1..=n);
            EmbeddedBand::new(i, j, sign(rng, positive))
        })
        .collect();
    BandRepresentation::new(n, bands).expect("bands in range")
}

/// Representation whose surface is connected, by rejection.
pub fn connected_rep(rng: &mut impl Rng, max_n: usize, max_k: usize, positive: bool) -> BandRepresentation {
    loop {
        let n = rng.gen_range(2..=max_n.min(max_k + 1));
        let k = rng.gen_range(n - 1..=max_k);
        let r = rep_with(rng, n, k, positive);
        if BraidedSurface::new(r.clone()).is_connected() {
            return r;
        }
    }
}

/// Uniformly random subset of `1..=k`.
pub fn subset(rng: &mut impl Rng, k: usize) -> Vec<usize> {
    (1..=k).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Arc ends of a graph as (disk, part, tooth) triples, 1-based.
fn arc_teeth(g: &CombedGraph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (s, parts) in g.disks().iter().enumerate() {
        for (p, part) in parts.iter().enumerate() {
            if let DiskPart::Comb(teeth) = part {
                for (x, t) in teeth.iter().enumerate() {
                    if matches!(t, Tooth::ArcEnd { .. }) {
                        out.push((s + 1, p + 1, x + 1));
                    }
                }
            }
        }
    }
    out
}

/// A full graph: the spine of a random handle subset, thickened by up to
/// `splits` inverse Whitehead moves while staying within `max_arcs` arcs.
pub fn full_graph(rng: &mut impl Rng, host: &BandRepresentation, splits: usize, max_arcs: usize) -> CombedGraph {
    let s = BraidedSurface::new(host.clone());
    let mut g = s.handle_spine(&subset(rng, s.handles())).expect("valid subset");
    for _ in 0..splits {
        if g.arc_count() >= max_arcs {
            break;
        }
        let teeth = arc_teeth(&g);
        if teeth.is_empty() {
            break;
        }
        let (d, p, t) = teeth[rng.gen_range(0..teeth.len())];
        let below = rng.gen_range(0..3);
        if let Some(h) = (0..=below).rev().find_map(|b| g.whitehead_split(d, p, t, b).ok()) {
            g = h;
        }
    }
    g
}

/// A random combed graph with `0..=max_per_handle` parallel arcs per 1-handle
/// and a random non-crossing comb structure on every disk. Each arc end joins
/// the innermost open comb with probability `join`, so larger values give
/// bigger combs and more graphs that are not full.
pub fn any_graph(rng: &mut impl Rng, host: &BandRepresentation, max_per_handle: usize, join: f64) -> CombedGraph {
    let s = BraidedSurface::new(host.clone());
    let m: Vec<usize> = (0..=s.handles()).map(|_| rng.gen_range(0..=max_per_handle)).collect();
    let mut disks = Vec::with_capacity(s.disks());
    for disk in 1..=s.disks() {
        // arc ends along this disk's edge, bottom to top
        let mut ends = Vec::new();
        for (t, &mt) in m.iter().enumerate().skip(1) {
            let b = s.band(t);
            if b.i == disk || b.j == disk {
                ends.extend((1..=mt).map(|slot| Tooth::ArcEnd { handle: t, slot }));
            }
        }
        let mut blocks: Vec<Vec<Tooth>> = Vec::new();
        let mut open: Vec<usize> = Vec::new();
        for tooth in ends {
            let close = rng.gen_range(0..=open.len());
            open.truncate(open.len() - close);
            match open.last() {
                Some(&top) if rng.gen_bool(join) => blocks[top].push(tooth),
                _ => {
                    blocks.push(vec![tooth]);
                    open.push(blocks.len() - 1);
                }
            }
        }
        let mut parts: Vec<DiskPart> = blocks.into_iter().map(DiskPart::Comb).collect();
        if parts.is_empty() || rng.gen_bool(0.2) {
            let at = rng.gen_range(0..=parts.len());
            parts.insert(at, DiskPart::Point);
        }
        disks.push(parts);
    }
    let arcs = (1..=s.handles())
        .flat_map(|t| {
            let mt = m[t];
            (1..=mt).map(move |a| Arc { handle: t, slot_i: a, slot_j: mt + 1 - a })
        })
        .collect();
    CombedGraph::new(host.clone(), disks, arcs).expect("generator builds valid graphs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let r = rep(&mut rng, 5, 6, false);
            assert!(r.strands() >= 2 && r.len() <= 6);
            let c = connected_rep(&mut rng, 4, 5, true);
            assert!(BraidedSurface::new(c.clone()).is_connected() && c.is_quasipositive());
            let g = any_graph(&mut rng, &r, 2, 0.6);
            assert!(g.is_valid());
            let f = full_graph(&mut rng, &c, 4, 12);
            assert!(f.arc_count() <= 12);
            assert!(f.is_full().unwrap());
        }
    }
}
