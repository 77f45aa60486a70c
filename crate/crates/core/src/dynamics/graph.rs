use serde::Serialize;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::maps::ResidueMap;
use crate::projective::ResiduePoint;

/// The dynamics of a map on the finitely many points of `P^1(k)`. Nodes are
/// indexed by `ResiduePoint::index`, with infinity last.
#[derive(Clone, Debug)]
pub struct FunctionalGraph {
    field: Field,
    succ: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    tail_depth: Vec<usize>,
}

impl FunctionalGraph {
    pub fn from_successors(field: &Field, succ: Vec<usize>) -> FunctionalGraph {
        let n = succ.len();
        // 0 = unvisited, 1 = on the current path, 2 = finished.
        let mut state = vec![0u8; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = succ[v];
            }
            if state[v] == 1 {
                let pos = path.iter().position(|&u| u == v).expect("on path");
                cycles.push(path[pos..].to_vec());
            }
            for u in path {
                state[u] = 2;
            }
        }
        let mut tail_depth = vec![usize::MAX; n];
        for c in &cycles {
            for &v in c {
                tail_depth[v] = 0;
            }
        }
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while tail_depth[v] == usize::MAX {
                path.push(v);
                v = succ[v];
            }
            let base = tail_depth[v];
            for (i, &u) in path.iter().rev().enumerate() {
                tail_depth[u] = base + i + 1;
            }
        }
        FunctionalGraph {
            field: field.clone(),
            succ,
            cycles,
            tail_depth,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successor(&self, p: &ResiduePoint) -> ResiduePoint {
        ResiduePoint::from_index(&self.field, self.succ[p.index()])
    }

    pub fn successors(&self) -> &[usize] {
        &self.succ
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn tail_depths(&self) -> &[usize] {
        &self.tail_depth
    }

    /// Exact period of a periodic node, `None` for tail nodes.
    pub fn period(&self, p: &ResiduePoint) -> Option<usize> {
        let i = p.index();
        self.cycles.iter().find(|c| c.contains(&i)).map(Vec::len)
    }
}

impl Serialize for FunctionalGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let name = |i: usize| ResiduePoint::from_index(&self.field, i).to_string();
        let nodes: Vec<String> = (0..self.len()).map(name).collect();
        let succ: Vec<String> = self.succ.iter().map(|&i| name(i)).collect();
        let cycles: Vec<Vec<String>> = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|&i| name(i)).collect())
            .collect();
        let mut st = s.serialize_struct("FunctionalGraph", 6)?;
        st.serialize_field("order", &self.field.order())?;
        st.serialize_field("nodes", &nodes)?;
        st.serialize_field("successors", &succ)?;
        st.serialize_field("cycles", &cycles)?;
        st.serialize_field("cycle_lengths", &self.cycle_lengths())?;
        st.serialize_field("tail_depths", &self.tail_depth)?;
        st.end()
    }
}

pub fn reduced_graph(psi: &ResidueMap) -> Result<FunctionalGraph> {
    if psi.resultant().is_zero() {
        return Err(Error::DegenerateResidueMap);
    }
    let field = psi.field();
    let succ = ResiduePoint::all(field)
        .iter()
        .map(|p| psi.evaluate(p).index())
        .collect();
    Ok(FunctionalGraph::from_successors(field, succ))
}
