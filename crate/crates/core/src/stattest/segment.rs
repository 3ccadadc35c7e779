use serde::{Deserialize, Serialize};

use super::statistic::{test_statistic, TestConfig, TestResult, MIN_SERIES_LEN};
use crate::error::{Error, Result};

/// One block of a recursive halving: observations `start..end` (0-based,
/// end exclusive).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentBlock {
    pub depth: u32,
    pub index: usize,
    pub start: usize,
    pub end: usize,
    pub result: TestResult,
}

impl SegmentBlock {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Test results for the full series, its halves, quarters, ... down to
/// `depth`. Blocks are stored depth by depth, left to right; the children
/// of block (d, i) are (d + 1, 2i) and (d + 1, 2i + 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub depth: u32,
    pub blocks: Vec<SegmentBlock>,
}

impl SegmentReport {
    pub fn level(&self, depth: u32) -> impl Iterator<Item = &SegmentBlock> {
        self.blocks.iter().filter(move |b| b.depth == depth)
    }

    pub fn block(&self, depth: u32, index: usize) -> Option<&SegmentBlock> {
        self.blocks
            .iter()
            .find(|b| b.depth == depth && b.index == index)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &SegmentBlock> {
        self.level(self.depth)
    }
}

/// Block boundaries at every depth. Each block splits into a first half of
/// ⌊len/2⌋ observations and a second half holding the rest.
pub fn segment_bounds(len: usize, depth: u32) -> Vec<Vec<(usize, usize)>> {
    let mut levels = vec![vec![(0, len)]];
    for _ in 0..depth {
        let prev = levels.last().expect("non-empty");
        let next = prev
            .iter()
            .flat_map(|&(s, e)| {
                let mid = s + (e - s) / 2;
                [(s, mid), (mid, e)]
            })
            .collect();
        levels.push(next);
    }
    levels
}

/// Run the test on the full series and on every block down to `depth`.
pub fn segment_test(series: &[f64], depth: u32, config: &TestConfig) -> Result<SegmentReport> {
    if depth > 20 {
        return Err(Error::InvalidInput(format!("segmentation depth {depth} is unreasonable")));
    }
    let levels = segment_bounds(series.len(), depth);
    let shortest = levels
        .last()
        .and_then(|l| l.iter().map(|(s, e)| e - s).min())
        .unwrap_or(0);
    if shortest < MIN_SERIES_LEN {
        return Err(Error::SegmentationDepth {
            depth,
            leaf_len: shortest,
            min_len: MIN_SERIES_LEN,
        });
    }
    let mut blocks = Vec::new();
    for (d, level) in levels.iter().enumerate() {
        for (i, &(start, end)) in level.iter().enumerate() {
            let result = test_statistic(&series[start..end], config)?;
            blocks.push(SegmentBlock {
                depth: d as u32,
                index: i,
                start,
                end,
                result,
            });
        }
    }
    Ok(SegmentReport { depth, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gauss_stream, RngStream};

    #[test]
    fn bounds_partition_each_level() {
        for len in [64, 100, 453, 2048] {
            let levels = segment_bounds(len, 3);
            for (d, level) in levels.iter().enumerate() {
                assert_eq!(level.len(), 1 << d);
                assert_eq!(level[0].0, 0);
                assert_eq!(level.last().unwrap().1, len);
                for w in level.windows(2) {
                    assert_eq!(w[0].1, w[1].0);
                }
            }
            // nesting
            for d in 1..levels.len() {
                for (i, &(s, e)) in levels[d - 1].iter().enumerate() {
                    assert_eq!(levels[d][2 * i].0, s);
                    assert_eq!(levels[d][2 * i + 1].1, e);
                }
            }
        }
    }

    #[test]
    fn depth_zero_is_full_test() {
        let x = gauss_stream(&RngStream::new(1, 0), 200);
        let cfg = TestConfig::default();
        let rep = segment_test(&x, 0, &cfg).unwrap();
        assert_eq!(rep.blocks.len(), 1);
        assert_eq!(rep.blocks[0].result, test_statistic(&x, &cfg).unwrap());
    }

    #[test]
    fn depth_three_on_2048() {
        let x = gauss_stream(&RngStream::new(2, 0), 2048);
        let rep = segment_test(&x, 3, &TestConfig::default()).unwrap();
        assert_eq!(rep.blocks.len(), 15);
        assert!(rep.leaves().all(|b| b.len() == 256));
        assert_eq!(rep.block(2, 3).unwrap().start, 1536);
        // auto bandwidth follows the block length
        let leaf = rep.block(3, 0).unwrap();
        assert!((leaf.result.kernel.bandwidth - 256f64.powf(-1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn too_deep() {
        let x = gauss_stream(&RngStream::new(3, 0), 200);
        let err = segment_test(&x, 3, &TestConfig::default()).unwrap_err();
        assert!(matches!(err, Error::SegmentationDepth { leaf_len: 25, .. }));
    }
}
