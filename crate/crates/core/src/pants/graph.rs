use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trivalent graph of a pants decomposition. Loops `(v, v)` and parallel
/// edges are allowed; a loop counts twice toward the degree of its vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct TrivalentGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for TrivalentGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        TrivalentGraph::new(j.vertices, j.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

impl From<TrivalentGraph> for GraphJson {
    fn from(g: TrivalentGraph) -> Self {
        GraphJson {
            vertices: g.vertices,
            edges: g.edges.into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TrivalentGraph {
    /// Checks `V ≥ 2`, endpoints in range, every degree 3 and connectivity.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::invalid(format!(
                "a closed trivalent graph needs at least 2 vertices, got {vertices}"
            )));
        }
        let mut degree = vec![0usize; vertices];
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d != 3) {
            return Err(Error::invalid(format!(
                "vertex {v} has degree {}, expected 3",
                degree[v]
            )));
        }
        // union-find connectivity
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        if (0..vertices).any(|v| find(&mut parent, v) != root) {
            return Err(Error::invalid("graph is disconnected"));
        }
        Ok(Self { vertices, edges })
    }

    /// Two vertices joined by three edges.
    pub fn theta() -> Self {
        Self::new(2, vec![(0, 1), (0, 1), (0, 1)]).expect("theta graph")
    }

    /// Two loops joined by a bridge: edges `a` (loop), `c` (bridge), `b` (loop).
    pub fn dumbbell() -> Self {
        Self::new(2, vec![(0, 0), (0, 1), (1, 1)]).expect("dumbbell graph")
    }

    /// Loop, bridge, then `g − 2` rungs of (double edge, bridge), ending in a
    /// loop. `genus_chain(2)` is the dumbbell.
    pub fn genus_chain(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::invalid(format!("genus {genus} < 2")));
        }
        let v = 2 * genus - 2;
        let mut edges = vec![(0, 0), (0, 1)];
        for i in 1..genus - 1 {
            let (a, b) = (2 * i - 1, 2 * i);
            edges.push((a, b));
            edges.push((a, b));
            edges.push((b, b + 1));
        }
        edges.push((v - 1, v - 1));
        Self::new(v, edges)
    }

    /// Complete graph on four vertices (genus 3).
    pub fn tetrahedron() -> Self {
        Self::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `V = 2g − 2`.
    pub fn genus(&self) -> usize {
        self.vertices / 2 + 1
    }

    /// Edges at `v` with multiplicity (a loop appears twice).
    pub fn incident_edges(&self, v: usize) -> [usize; 3] {
        let mut out = [0; 3];
        let mut n = 0;
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            for end in [a, b] {
                if end == v {
                    out[n] = e;
                    n += 1;
                }
            }
        }
        debug_assert_eq!(n, 3);
        out
    }

    /// Vertex-edge incidence mod 2 (loops give 0).
    pub fn incidence_mod2(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.edges.len()]; self.vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            m[a][e] ^= 1;
            m[b][e] ^= 1;
        }
        m
    }
}

/// Rank over `Z/2` by elimination.
pub(crate) fn rank_mod2(rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] == 1 {
                for j in 0..cols {
                    m[i][j] ^= m[r][j];
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_have_euler_counts() {
        for g in [
            TrivalentGraph::theta(),
            TrivalentGraph::dumbbell(),
            TrivalentGraph::tetrahedron(),
        ] {
            assert_eq!(3 * g.n_vertices(), 2 * g.n_edges());
        }
        for genus in 2..7 {
            let g = TrivalentGraph::genus_chain(genus).unwrap();
            assert_eq!(g.n_vertices(), 2 * genus - 2);
            assert_eq!(g.n_edges(), 3 * genus - 3);
            assert_eq!(g.genus(), genus);
        }
        assert_eq!(TrivalentGraph::genus_chain(2).unwrap(), TrivalentGraph::dumbbell());
    }

    #[test]
    fn loops_count_twice() {
        let d = TrivalentGraph::dumbbell();
        assert_eq!(d.incident_edges(0), [0, 0, 1]);
        assert_eq!(d.incident_edges(1), [1, 2, 2]);
    }

    #[test]
    fn validation() {
        assert!(TrivalentGraph::new(1, vec![(0, 0), (0, 0)]).is_err());
        assert!(TrivalentGraph::new(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(TrivalentGraph::new(4, vec![(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)]).is_err());
        assert!(TrivalentGraph::from_json(r#"{"vertices":2,"edges":[[0,1],[0,1]]}"#).is_err());
        assert!(TrivalentGraph::from_json("not json").is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = TrivalentGraph::genus_chain(3).unwrap();
        let s = g.to_json();
        assert_eq!(TrivalentGraph::from_json(&s).unwrap(), g);
        let t = TrivalentGraph::from_json(r#"{"vertices":2,"edges":[[0,1],[0,1],[0,1]]}"#).unwrap();
        assert_eq!(t, TrivalentGraph::theta());
    }

    #[test]
    fn mod2_rank_is_v_minus_one() {
        for g in [TrivalentGraph::theta(), TrivalentGraph::tetrahedron()] {
            assert_eq!(rank_mod2(&g.incidence_mod2()), g.n_vertices() - 1);
        }
    }
}
