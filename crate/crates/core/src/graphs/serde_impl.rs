//! JSON shape shared by both graph kinds: `{"vertices": [..], "edges":
//! [[a, b], ..]}`. Multigraph edges are listed in id order.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LabeledGraph, MultiGraph, MultiGraphBuilder, VertexId};

#[derive(Serialize, Deserialize)]
struct Repr {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Serialize for MultiGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let edges = self
            .edge_ids()
            .map(|e| {
                let (a, b) = self.endpoints(e).expect("own edge");
                (a.clone(), b.clone())
            })
            .collect();
        Repr {
            vertices: self.vertices().to_vec(),
            edges,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        let mut b = MultiGraphBuilder::new();
        for v in r.vertices {
            if b.has_vertex(&v) {
                return Err(D::Error::custom(format!("duplicate vertex `{v}`")));
            }
            b.vertex(v);
        }
        for (x, y) in r.edges {
            for v in [&x, &y] {
                if !b.has_vertex(v) {
                    return Err(D::Error::custom(format!("edge endpoint `{v}` is not a listed vertex")));
                }
            }
            b.edge(x, y);
        }
        Ok(b.build())
    }
}

impl Serialize for LabeledGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            vertices: self.vertices().to_vec(),
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        LabeledGraph::new(r.vertices, r.edges).map_err(D::Error::custom)
    }
}
