use super::basis::BasisRegistry;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::linalg::OperatorMatrix;

#[derive(Clone, Debug)]
pub struct SectorBlock {
    pub m_total: HalfInt,
    /// Registry indices of the sector, in registry order.
    pub indices: Vec<usize>,
    pub block: OperatorMatrix,
}

/// Total-magnetization sectors of an operator, ordered by descending `m`.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub blocks: Vec<SectorBlock>,
}

impl BlockDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.indices.len()).collect()
    }

    pub fn sector(&self, m_total: HalfInt) -> Option<&SectorBlock> {
        self.blocks.iter().find(|b| b.m_total == m_total)
    }
}

/// Splits `h` into total-`Sᶻ` sectors of `basis`, failing if any entry
/// connecting two different sectors exceeds `tol`.
pub fn block_decompose(
    h: &OperatorMatrix,
    basis: &BasisRegistry,
    tol: f64,
) -> Result<BlockDecomposition> {
    if h.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: h.dim(),
        });
    }
    let n = h.dim();
    let mut leak: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if basis.m_total(i) != basis.m_total(j) {
                leak = leak.max(h[(i, j)].norm());
            }
        }
    }
    if leak > tol {
        return Err(Error::SectorLeakage {
            leak,
            tolerance: tol,
        });
    }

    let mut sectors: Vec<HalfInt> = (0..n).map(|i| basis.m_total(i)).collect();
    sectors.sort_unstable_by(|a, b| b.cmp(a));
    sectors.dedup();
    let blocks = sectors
        .into_iter()
        .map(|m| {
            let indices: Vec<usize> = (0..n).filter(|&i| basis.m_total(i) == m).collect();
            let block = h.restrict(&indices);
            SectorBlock {
                m_total: m,
                indices,
                block,
            }
        })
        .collect();
    Ok(BlockDecomposition { blocks })
}
