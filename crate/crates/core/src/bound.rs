//! Obligatory branch vertices and the combinatorial lower bound they give.
//!
//! An articulation point whose removal leaves at least three components has
//! degree at least three in every spanning tree, so the number of such vertices
//! bounds the optimum from below. The split counts come straight out of the
//! shared structural DFS, so the whole computation is linear.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::structure::{structural_report, StructuralReport};

#[derive(Debug, Clone)]
pub struct LowerBoundResult {
    obligatory: Vec<VertexId>,
    alpha: BTreeMap<VertexId, usize>,
    fingerprint: u64,
    report: StructuralReport,
}

impl LowerBoundResult {
    /// Obligatory branches, ascending.
    pub fn obligatory(&self) -> &[VertexId] {
        &self.obligatory
    }

    pub fn is_obligatory(&self, v: VertexId) -> bool {
        self.obligatory.binary_search(&v).is_ok()
    }

    /// Split count of every obligatory branch.
    pub fn alpha(&self) -> &BTreeMap<VertexId, usize> {
        &self.alpha
    }

    pub fn value(&self) -> usize {
        self.obligatory.len()
    }

    /// The structural analysis the bound was read from.
    pub fn report(&self) -> &StructuralReport {
        &self.report
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn obligatory_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.obligatory {
            mask[v] = true;
        }
        mask
    }
}

pub fn obligatory_branch_bound(g: &Graph) -> Result<LowerBoundResult> {
    g.require_connected()?;
    Ok(bound_from_report(g, structural_report(g)))
}

pub(crate) fn bound_from_report(g: &Graph, report: StructuralReport) -> LowerBoundResult {
    let alpha: BTreeMap<_, _> = report
        .articulation()
        .iter()
        .filter(|&(_, &a)| a >= 3)
        .map(|(&v, &a)| (v, a))
        .collect();
    LowerBoundResult {
        obligatory: alpha.keys().copied().collect(),
        alpha,
        fingerprint: g.fingerprint(),
        report,
    }
}
