//! Fiber surfaces of the torus links `O{n,n}` and the two embeddings into them.

use alloc::vec::Vec;

use crate::braid::{BandRepresentation, BraidWord, EmbeddedBand, Letter, Sign};
use crate::error::{Error, Result};
use crate::graph::{Arc, CombedGraph, DiskPart, Tooth};
use crate::invariants::alexander_from_braid;
use crate::poly::LaurentPolynomial;
use crate::surface::BraidedSurface;

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidParameter(alloc::format!("n must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

/// `∇_n = (σ_1 ⋯ σ_{n−1})^n` as a band representation on `n` strands.
pub fn nabla(n: usize) -> Result<BandRepresentation> {
    check_n(n)?;
    let bands = (0..n).flat_map(|_| (1..n).map(|d| EmbeddedBand::positive(d, d + 1))).collect();
    BandRepresentation::new(n, bands)
}

/// `ν = (n−1)² + 1`, the strand count of [`q_rep`].
pub fn q_strands(n: usize) -> usize {
    (n - 1) * (n - 1) + 1
}

/// The quasipositive representation `q_n` on `ν` strands whose surface is the fiber of `O{n,n}`.
pub fn q_rep(n: usize) -> Result<BandRepresentation> {
    check_n(n)?;
    let nu = q_strands(n);
    let mut bands: Vec<EmbeddedBand> = (1..nu).map(|s| EmbeddedBand::positive(1, nu - s + 1)).collect();
    for c in 0..n - 1 {
        for d in 0..n - 1 {
            bands.push(EmbeddedBand::positive(1, nu - c - (n - 1) * d));
        }
    }
    BandRepresentation::new(nu, bands)
}

/// One coarse 1-handle of `S(q_n)`: a fine 0-handle and the two fine 1-handles tying it to disk 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseHandle {
    pub index: usize,
    pub disk: usize,
    pub handles: [usize; 2],
}

/// Coarsening of the fine handle decomposition of `S(q_n)` to a single
/// 0-handle (disk 1) and `ν − 1` coarse 1-handles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseDecomposition {
    n: usize,
    handles: Vec<CoarseHandle>,
}

impl CoarseDecomposition {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let nu = q_strands(n);
        let mut handles = Vec::with_capacity(nu - 1);
        for d in 0..n - 1 {
            for c in 0..n - 1 {
                let s = 1 + c + (n - 1) * d;
                let s_prime = d + (n - 1) * c;
                handles.push(CoarseHandle { index: s, disk: nu - s + 1, handles: [s, nu + s_prime] });
            }
        }
        handles.sort_by_key(|h| h.index);
        Ok(Self { n, handles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> usize {
        q_strands(self.n)
    }

    pub fn handles(&self) -> &[CoarseHandle] {
        &self.handles
    }

    /// Coarse 1-handle containing fine 1-handle `t`.
    pub fn coarse_of_band(&self, t: usize) -> Option<usize> {
        self.handles.iter().find(|h| h.handles.contains(&t)).map(|h| h.index)
    }

    /// Every fine handle of `S(q_n)` lies in exactly one coarse handle, and
    /// each coarse 1-handle's bands really join disk 1 to its own disk.
    pub fn check(&self) -> Result<()> {
        let nu = self.nu();
        let q = q_rep(self.n)?;
        let fail = |why: alloc::string::String| Err(Error::InvalidParameter(why));
        if self.handles.len() != nu - 1 {
            return fail(alloc::format!("{} coarse 1-handles, expected {}", self.handles.len(), nu - 1));
        }
        let mut disk_hits = alloc::vec![0usize; nu + 1];
        let mut band_hits = alloc::vec![0usize; q.len() + 1];
        disk_hits[1] += 1;
        for h in &self.handles {
            if h.disk == 0 || h.disk > nu {
                return fail(alloc::format!("coarse handle {} names disk {}", h.index, h.disk));
            }
            disk_hits[h.disk] += 1;
            for &t in &h.handles {
                if t == 0 || t > q.len() {
                    return fail(alloc::format!("coarse handle {} names band {t}", h.index));
                }
                band_hits[t] += 1;
                if q.bands()[t - 1] != EmbeddedBand::positive(1, h.disk) {
                    return fail(alloc::format!("band {t} does not join disk 1 to disk {}", h.disk));
                }
            }
        }
        if let Some(s) = (1..=nu).find(|&s| disk_hits[s] != 1) {
            return fail(alloc::format!("fine 0-handle {s} covered {} times", disk_hits[s]));
        }
        if let Some(t) = (1..=q.len()).find(|&t| band_hits[t] != 1) {
            return fail(alloc::format!("fine 1-handle {t} covered {} times", band_hits[t]));
        }
        Ok(())
    }
}

/// A positive braidword embedded as a spine in the fiber `S(∇_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedWord {
    pub n: usize,
    /// 1-handles of `S(∇_n)` carrying the letters, in letter order.
    pub marked: Vec<usize>,
    pub graph: CombedGraph,
}

/// Places letter `t = σ_i` of `p` on 1-handle `(n−1)(t−1) + i` of `S(∇_n)`.
/// Disks beyond the word's own strands carry nothing, so `N(G) ≅ S(p)`.
pub fn pad_into_nabla(p: &BraidWord) -> Result<PaddedWord> {
    let m = p.strands();
    if m < 2 {
        return Err(Error::InvalidParameter(alloc::format!("need at least 2 strands, got {m}")));
    }
    if let Some(pos) = p.letters().iter().position(|l| l.sign == Sign::Neg) {
        return Err(Error::NotPositive(pos + 1));
    }
    let n = m.max(p.len());
    let marked: Vec<usize> = p.letters().iter().enumerate().map(|(t, l)| (n - 1) * t + l.index).collect();
    let keep: Vec<usize> = (1..=m).collect();
    let graph = BraidedSurface::new(nabla(n)?).spine_on(&marked, &keep)?;
    Ok(PaddedWord { n, marked, graph })
}

/// A quasipositive band representation drawn as a graph on a positive braid's surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedBands {
    pub word: BraidWord,
    pub graph: CombedGraph,
}

/// Replaces each band `σ_{i,j}` by the chain `σ_i ⋯ σ_{j−1}` and draws the
/// original band as a path through that chain.
pub fn expand_bands(rep: &BandRepresentation) -> Result<ExpandedBands> {
    if let Some(pos) = rep.bands().iter().position(|b| b.sign == Sign::Neg) {
        return Err(Error::NotQuasipositive(pos + 1));
    }
    let n = rep.strands();
    let mut letters = Vec::new();
    let mut main: Vec<Vec<Tooth>> = alloc::vec![Vec::new(); n];
    let mut through: Vec<Vec<Vec<Tooth>>> = alloc::vec![Vec::new(); n];
    for b in rep.bands() {
        let first = letters.len() + 1;
        letters.extend((b.i..b.j).map(Letter::pos));
        let last = letters.len();
        main[b.i - 1].push(Tooth::ArcEnd { handle: first, slot: 1 });
        main[b.j - 1].push(Tooth::ArcEnd { handle: last, slot: 1 });
        for h in first..last {
            let disk = b.i + (h - first) + 1;
            through[disk - 1].push(alloc::vec![
                Tooth::ArcEnd { handle: h, slot: 1 },
                Tooth::ArcEnd { handle: h + 1, slot: 1 },
            ]);
        }
    }
    let word = BraidWord::new(n, letters)?;
    let arcs = (1..=word.len()).map(|h| Arc { handle: h, slot_i: 1, slot_j: 1 }).collect();
    let first_handle = |teeth: &Vec<Tooth>| match teeth[0] {
        Tooth::ArcEnd { handle, .. } => handle,
        Tooth::FreeEnd => 0,
    };
    let disks = main
        .into_iter()
        .zip(through)
        .map(|(m, mut combs)| {
            let mut parts = Vec::new();
            if m.is_empty() {
                parts.push(DiskPart::Point);
            } else {
                combs.push(m);
            }
            combs.sort_by_key(first_handle);
            parts.extend(combs.into_iter().map(DiskPart::Comb));
            parts
        })
        .collect();
    let graph = CombedGraph::new(BandRepresentation::from_word(&word), disks, arcs)?;
    Ok(ExpandedBands { word, graph })
}

/// Invariants compared between `S(q_n)` and `S(∇_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub n: usize,
    pub chi_q: i64,
    pub chi_nabla: i64,
    pub components_q: usize,
    pub components_nabla: usize,
    pub alexander_q: LaurentPolynomial,
    pub alexander_nabla: LaurentPolynomial,
}

impl FiberReport {
    pub fn chi_agrees(&self) -> bool {
        self.chi_q == self.chi_nabla
    }

    pub fn components_agree(&self) -> bool {
        self.components_q == self.components_nabla && self.components_q == self.n
    }

    pub fn alexander_agrees(&self) -> bool {
        self.alexander_q.eq_up_to_units(&self.alexander_nabla)
    }
}

/// Checks that `S(q_n)` and `S(∇_n)` agree on Euler characteristic, number of
/// boundary components and Alexander polynomial of the boundary.
pub fn verify_fiber(n: usize) -> Result<FiberReport> {
    let q = BraidedSurface::new(q_rep(n)?);
    let nab = BraidedSurface::new(nabla(n)?);
    let (bq, bn) = (q.rep().beta(), nab.rep().beta());
    let report = FiberReport {
        n,
        chi_q: q.euler_characteristic(),
        chi_nabla: nab.euler_characteristic(),
        components_q: bq.permutation().cycle_count(),
        components_nabla: bn.permutation().cycle_count(),
        alexander_q: alexander_from_braid(&bq)?,
        alexander_nabla: alexander_from_braid(&bn)?,
    };
    if !report.chi_agrees() {
        return Err(Error::FiberVerificationFailed(alloc::format!(
            "Euler characteristics {} and {}",
            report.chi_q, report.chi_nabla
        )));
    }
    if !report.components_agree() {
        return Err(Error::FiberVerificationFailed(alloc::format!(
            "closures have {} and {} components, expected {n}",
            report.components_q, report.components_nabla
        )));
    }
    if !report.alexander_agrees() {
        return Err(Error::FiberVerificationFailed(alloc::format!(
            "Alexander polynomials {} and {}",
            report.alexander_q, report.alexander_nabla
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::ComponentSummary;

    fn bands(rep: &BandRepresentation) -> Vec<(usize, usize)> {
        rep.bands().iter().map(|b| (b.i, b.j)).collect()
    }

    #[test]
    fn nabla_small() {
        assert_eq!(bands(&nabla(2).unwrap()), [(1, 2), (1, 2)]);
        assert_eq!(bands(&nabla(3).unwrap()), [(1, 2), (2, 3), (1, 2), (2, 3), (1, 2), (2, 3)]);
        assert!(matches!(nabla(1), Err(Error::InvalidParameter(_))));
        for n in 2..=6 {
            let s = BraidedSurface::new(nabla(n).unwrap());
            assert_eq!(s.euler_characteristic(), (n as i64) - (n * (n - 1)) as i64);
        }
    }

    #[test]
    fn q_small() {
        assert_eq!(bands(&q_rep(2).unwrap()), [(1, 2), (1, 2)]);
        assert_eq!(
            bands(&q_rep(3).unwrap()),
            [(1, 5), (1, 4), (1, 3), (1, 2), (1, 5), (1, 3), (1, 4), (1, 2)]
        );
        for n in 2..=6 {
            let q = q_rep(n).unwrap();
            assert!(q.is_quasipositive());
            let chi = BraidedSurface::new(q.clone()).euler_characteristic();
            assert_eq!(chi, 1 - ((n - 1) * (n - 1)) as i64);
            assert_eq!(q.beta().exponent_sum(), 2 * ((n - 1) * (n - 1)) as i64);
            assert_eq!(chi, q.strands() as i64 - q.beta().exponent_sum());
        }
    }

    #[test]
    fn coarse_partition() {
        for n in 2..=6 {
            let c = CoarseDecomposition::new(n).unwrap();
            c.check().unwrap();
            assert_eq!(c.handles().len(), c.nu() - 1);
        }
    }

    #[test]
    fn coarse_with_wide_range_collides() {
        // letting c, d run to n−1 produces indices past ν−1
        let n = 3;
        let nu = q_strands(n);
        let wide: Vec<usize> = (0..n).flat_map(|d| (0..n).map(move |c| 1 + c + (n - 1) * d)).collect();
        assert!(wide.iter().any(|&s| s > nu - 1));
    }

    #[test]
    fn pad_examples() {
        let w = BraidWord::new(2, alloc::vec![Letter::pos(1)]).unwrap();
        let p = pad_into_nabla(&w).unwrap();
        assert_eq!((p.n, p.marked.clone()), (2, alloc::vec![1]));

        let w = BraidWord::new(3, alloc::vec![Letter::pos(1), Letter::pos(2), Letter::pos(1)]).unwrap();
        let p = pad_into_nabla(&w).unwrap();
        assert_eq!((p.n, p.marked.clone()), (3, alloc::vec![1, 4, 5]));
        assert!(p.graph.is_full().unwrap());
        let surface = BraidedSurface::new(BandRepresentation::from_word(&w));
        assert_eq!(p.graph.neighborhood_summary().unwrap(), surface.summary());

        let p = pad_into_nabla(&BraidWord::empty(2).unwrap()).unwrap();
        assert!(p.marked.is_empty());
        let two = ComponentSummary { chi: 1, boundary: 1 };
        assert_eq!(p.graph.neighborhood_summary().unwrap().components(), [two, two]);

        let w = BraidWord::new(2, alloc::vec![Letter::pos(1), Letter::neg(1)]).unwrap();
        assert_eq!(pad_into_nabla(&w).unwrap_err(), Error::NotPositive(2));
    }

    #[test]
    fn pad_long_word_keeps_summary() {
        let w = BraidWord::new(2, alloc::vec![Letter::pos(1); 4]).unwrap();
        let p = pad_into_nabla(&w).unwrap();
        assert_eq!(p.n, 4);
        let surface = BraidedSurface::new(BandRepresentation::from_word(&w));
        assert_eq!(p.graph.neighborhood_summary().unwrap(), surface.summary());
    }

    #[test]
    fn expand_examples() {
        let rep = BandRepresentation::new(3, alloc::vec![EmbeddedBand::positive(1, 3)]).unwrap();
        let e = expand_bands(&rep).unwrap();
        assert_eq!(e.word.letters(), [Letter::pos(1), Letter::pos(2)]);
        let disk = ComponentSummary { chi: 1, boundary: 1 };
        assert_eq!(e.graph.neighborhood_summary().unwrap().components(), [disk, disk]);
        assert!(e.graph.is_full().unwrap());

        let rep = BandRepresentation::new(3, alloc::vec![EmbeddedBand::positive(1, 3); 2]).unwrap();
        let e = expand_bands(&rep).unwrap();
        assert_eq!(e.word.len(), 4);
        let sum = e.graph.neighborhood_summary().unwrap();
        assert_eq!(sum, BraidedSurface::new(rep).summary());
        assert_eq!(sum.total_chi(), 1);

        let rep = BandRepresentation::new(3, alloc::vec![EmbeddedBand::new(1, 3, Sign::Neg)]).unwrap();
        assert_eq!(expand_bands(&rep).unwrap_err(), Error::NotQuasipositive(1));
    }

    #[test]
    fn fiber_small() {
        let r = verify_fiber(2).unwrap();
        assert_eq!(r.alexander_q, r.alexander_nabla);
        let r = verify_fiber(3).unwrap();
        assert_eq!((r.chi_q, r.components_q), (-3, 3));
        let r = verify_fiber(4).unwrap();
        assert_eq!((r.chi_q, r.chi_nabla, r.components_nabla), (-8, -8, 4));
    }
}
