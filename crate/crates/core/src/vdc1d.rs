//! The one-dimensional van der Corput sequence `{wx}` of a map, listed in word
//! order.
//!
//! Level `n` is built from level `n-1` without sorting: for each parent `w'`
//! in order, the children `aw'` follow in increasing `a` when `sgn(w') = +1`
//! and in decreasing `a` otherwise. Two children of one parent differ only in
//! their first symbol, whose suffix is `w'`, so this is exactly
//! [`word_compare`](crate::interval_maps::word_compare) order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval_maps::{PLMap, Word};

/// Default cap on the number of points held for one level.
pub const DEFAULT_LEVEL_BUDGET: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VdcPoint {
    pub point: f64,
    pub word: Word,
}

#[derive(Clone, Copy, Debug)]
struct Node {
    parent: u32,
    symbol: u32,
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    point: f64,
    sign: i8,
}

/// Lazily generated stream of `wx`, `ε` first.
#[derive(Clone, Debug)]
pub struct VdcStream {
    map: PLMap,
    x: f64,
    budget: usize,
    /// Parent links for every level generated so far; level 0 is `[ε]`.
    nodes: Vec<Vec<Node>>,
    current: Vec<Slot>,
    cursor: usize,
    emitted: u64,
    exhausted: bool,
}

impl VdcStream {
    pub fn new(map: PLMap, x: f64) -> Result<Self> {
        Self::with_budget(map, x, DEFAULT_LEVEL_BUDGET)
    }

    pub fn with_budget(map: PLMap, x: f64, budget: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("base point {x} outside [0,1]")));
        }
        let x = map.snap(x);
        Ok(Self {
            map,
            x,
            budget,
            nodes: vec![vec![Node {
                parent: 0,
                symbol: 0,
            }]],
            current: vec![Slot { point: x, sign: 1 }],
            cursor: 0,
            emitted: 0,
            exhausted: false,
        })
    }

    pub fn map(&self) -> &PLMap {
        &self.map
    }

    pub fn base(&self) -> f64 {
        self.x
    }

    /// Length of the words currently being emitted.
    pub fn level(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    fn word_at(&self, level: usize, mut index: usize) -> Word {
        let mut symbols = Vec::with_capacity(level);
        for n in (1..=level).rev() {
            let node = self.nodes[n][index];
            symbols.push(node.symbol as usize);
            index = node.parent as usize;
        }
        Word::new(symbols)
    }

    fn advance_level(&mut self) -> Result<()> {
        let k = self.map.alphabet_size();
        let mut points = Vec::new();
        let mut links = Vec::new();
        for (p, slot) in self.current.iter().enumerate() {
            for i in 0..k {
                let a = if slot.sign > 0 { i } else { k - 1 - i };
                if let Some(y) = self.map.branch_inverse(a, slot.point) {
                    if points.len() == self.budget {
                        return Err(Error::Resource(format!(
                            "level {} exceeds {} points",
                            self.level() + 1,
                            self.budget
                        )));
                    }
                    points.push(Slot {
                        point: y,
                        sign: slot.sign * self.map.sign(a),
                    });
                    links.push(Node {
                        parent: p as u32,
                        symbol: a as u32,
                    });
                }
            }
        }
        if points.is_empty() {
            self.exhausted = true;
        }
        self.current = points;
        self.nodes.push(links);
        self.cursor = 0;
        Ok(())
    }

    /// Next point with its word, or `None` once no longer words admit `wx`.
    pub fn next_point(&mut self) -> Result<Option<VdcPoint>> {
        while self.cursor == self.current.len() {
            if self.exhausted {
                return Ok(None);
            }
            self.advance_level()?;
        }
        let i = self.cursor;
        self.cursor += 1;
        self.emitted += 1;
        Ok(Some(VdcPoint {
            point: self.current[i].point,
            word: self.word_at(self.level(), i),
        }))
    }

    /// Next point without rebuilding its word.
    pub fn next_value(&mut self) -> Result<Option<f64>> {
        while self.cursor == self.current.len() {
            if self.exhausted {
                return Ok(None);
            }
            self.advance_level()?;
        }
        let i = self.cursor;
        self.cursor += 1;
        self.emitted += 1;
        Ok(Some(self.current[i].point))
    }
}

impl Iterator for VdcStream {
    type Item = Result<VdcPoint>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_point().transpose()
    }
}

/// First `n` points of the stream.
pub fn vdc_take(map: &PLMap, x: f64, n: usize) -> Result<Vec<VdcPoint>> {
    VdcStream::new(map.clone(), x)?.take(n).collect()
}

/// First `n` values of the stream.
pub fn vdc_values(map: &PLMap, x: f64, n: usize) -> Result<Vec<f64>> {
    let mut s = VdcStream::new(map.clone(), x)?;
    let mut out = Vec::with_capacity(n.min(DEFAULT_LEVEL_BUDGET));
    while out.len() < n {
        match s.next_value()? {
            Some(v) => out.push(v),
            None => break,
        }
    }
    Ok(out)
}

/// All points of level `n`, in word order.
pub fn vdc_level(map: &PLMap, x: f64, n: usize) -> Result<Vec<VdcPoint>> {
    let mut s = VdcStream::new(map.clone(), x)?;
    for _ in 0..n {
        if s.exhausted {
            return Ok(Vec::new());
        }
        s.advance_level()?;
    }
    Ok((0..s.current.len())
        .map(|i| VdcPoint {
            point: s.current[i].point,
            word: s.word_at(n, i),
        })
        .collect())
}
