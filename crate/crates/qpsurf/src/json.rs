//! JSON documents for braid words, band representations, summaries and combed graphs.

use serde::{Deserialize, Serialize};

use qpsurf_core::graph::Arc;
use qpsurf_core::{
    BandRepresentation, BraidWord, CombedGraph, DiskPart, EmbeddedBand, Letter, Sign, Site, SurfaceSummary, Tooth,
};

use crate::error::CliError;

fn sign_from(v: i64) -> Result<Sign, CliError> {
    Sign::from_value(v).ok_or_else(|| CliError::Malformed(format!("sign must be 1 or -1, got {v}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    pub strands: usize,
    pub letters: Vec<(usize, i64)>,
}

impl From<&BraidWord> for WordDoc {
    fn from(w: &BraidWord) -> Self {
        WordDoc { strands: w.strands(), letters: w.letters().iter().map(|l| (l.index, l.sign.value())).collect() }
    }
}

impl TryFrom<&WordDoc> for BraidWord {
    type Error = CliError;

    fn try_from(d: &WordDoc) -> Result<Self, CliError> {
        let letters = d
            .letters
            .iter()
            .map(|&(index, s)| Ok(Letter { index, sign: sign_from(s)? }))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(BraidWord::new(d.strands, letters)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub strands: usize,
    pub bands: Vec<(usize, usize, i64)>,
}

impl From<&BandRepresentation> for RepDoc {
    fn from(r: &BandRepresentation) -> Self {
        RepDoc { strands: r.strands(), bands: r.bands().iter().map(|b| (b.i, b.j, b.sign.value())).collect() }
    }
}

impl TryFrom<&RepDoc> for BandRepresentation {
    type Error = CliError;

    fn try_from(d: &RepDoc) -> Result<Self, CliError> {
        let bands = d
            .bands
            .iter()
            .map(|&(i, j, s)| Ok(EmbeddedBand::new(i, j, sign_from(s)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(BandRepresentation::new(d.strands, bands)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub chi: i64,
    pub components: Vec<(i64, usize)>,
}

impl From<&SurfaceSummary> for SummaryDoc {
    fn from(s: &SurfaceSummary) -> Self {
        SummaryDoc { chi: s.total_chi(), components: s.components().iter().map(|c| (c.chi, c.boundary)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToothDoc {
    ArcEnd((usize, usize)),
    FreeEnd(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartDoc {
    Comb(Vec<ToothDoc>),
    Point(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub host: RepDoc,
    pub disks: Vec<Vec<PartDoc>>,
    pub arcs: Vec<(usize, usize, usize)>,
}

impl From<&CombedGraph> for GraphDoc {
    fn from(g: &CombedGraph) -> Self {
        let disks = g
            .disks()
            .iter()
            .map(|parts| {
                parts
                    .iter()
                    .map(|p| match p {
                        DiskPart::Point => PartDoc::Point(true),
                        DiskPart::Comb(teeth) => PartDoc::Comb(
                            teeth
                                .iter()
                                .map(|t| match *t {
                                    Tooth::ArcEnd { handle, slot } => ToothDoc::ArcEnd((handle, slot)),
                                    Tooth::FreeEnd => ToothDoc::FreeEnd(true),
                                })
                                .collect(),
                        ),
                    })
                    .collect()
            })
            .collect();
        GraphDoc {
            host: g.host().rep().into(),
            disks,
            arcs: g.arcs().iter().map(|a| (a.handle, a.slot_i, a.slot_j)).collect(),
        }
    }
}

impl GraphDoc {
    /// Converts without validating the graph structure.
    pub fn to_unchecked(&self) -> Result<CombedGraph, CliError> {
        let host = BandRepresentation::try_from(&self.host)?;
        let flag = |b: bool, what: &str| {
            if b {
                Ok(())
            } else {
                Err(CliError::Malformed(format!("\"{what}\" must be true")))
            }
        };
        let mut disks = Vec::with_capacity(self.disks.len());
        for parts in &self.disks {
            let mut out = Vec::with_capacity(parts.len());
            for p in parts {
                out.push(match p {
                    PartDoc::Point(b) => {
                        flag(*b, "point")?;
                        DiskPart::Point
                    }
                    PartDoc::Comb(teeth) => {
                        let mut ts = Vec::with_capacity(teeth.len());
                        for t in teeth {
                            ts.push(match *t {
                                ToothDoc::ArcEnd((handle, slot)) => Tooth::ArcEnd { handle, slot },
                                ToothDoc::FreeEnd(b) => {
                                    flag(b, "free_end")?;
                                    Tooth::FreeEnd
                                }
                            });
                        }
                        DiskPart::Comb(ts)
                    }
                });
            }
            disks.push(out);
        }
        let arcs = self.arcs.iter().map(|&(handle, slot_i, slot_j)| Arc { handle, slot_i, slot_j }).collect();
        Ok(CombedGraph::from_parts_unchecked(host, disks, arcs))
    }
}

impl TryFrom<&GraphDoc> for CombedGraph {
    type Error = CliError;

    fn try_from(d: &GraphDoc) -> Result<Self, CliError> {
        let g = d.to_unchecked()?;
        match g.validate().first() {
            None => Ok(g),
            Some(v) => Err(qpsurf_core::Error::InvalidGraph(v.to_string()).into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteDoc {
    pub disk: usize,
    pub part: usize,
    pub tooth: usize,
}

impl From<&Site> for SiteDoc {
    fn from(s: &Site) -> Self {
        SiteDoc { disk: s.disk, part: s.part, tooth: s.tooth }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_schema_shape() {
        let s = qpsurf_core::BraidedSurface::new(qpsurf_core::q_rep(2).unwrap());
        let g = s.handle_spine(&[1]).unwrap();
        let v = serde_json::to_value(GraphDoc::from(&g)).unwrap();
        let expected = serde_json::json!({
            "host": {"strands": 2, "bands": [[1, 2, 1], [1, 2, 1]]},
            "disks": [[{"comb": [{"arc_end": [1, 1]}]}], [{"comb": [{"arc_end": [1, 1]}]}]],
            "arcs": [[1, 1, 1]]
        });
        assert_eq!(v, expected);
        let back: GraphDoc = serde_json::from_value(v).unwrap();
        assert_eq!(CombedGraph::try_from(&back).unwrap(), g);
    }

    #[test]
    fn point_and_free_end() {
        let doc: PartDoc = serde_json::from_str(r#"{"point": true}"#).unwrap();
        assert_eq!(doc, PartDoc::Point(true));
        let doc: ToothDoc = serde_json::from_str(r#"{"free_end": true}"#).unwrap();
        assert_eq!(doc, ToothDoc::FreeEnd(true));
    }

    #[test]
    fn bad_sign_is_malformed() {
        let d = RepDoc { strands: 2, bands: vec![(1, 2, 2)] };
        assert!(matches!(BandRepresentation::try_from(&d), Err(CliError::Malformed(_))));
        let d = WordDoc { strands: 2, letters: vec![(2, 1)] };
        assert!(matches!(BraidWord::try_from(&d), Err(CliError::Core(_))));
    }
}
