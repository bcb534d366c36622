//! Splint-directed assembly of sense fragments.
//!
//! A product is a concatenation of fragments (repetition allowed) in which
//! every junction between neighbouring fragments is spanned by an occurrence
//! of some splint's sequence inside the product. A product is kept when it is
//! maximal, i.e. it is not a proper fragment-aligned sub-chain of another
//! valid product.
//!
//! Coverage of a junction only depends on the `W = longest splint - 1`
//! symbols on either side of it. Chains are grown to the right from every
//! leftmost fragment; a partial chain survives as long as every junction that
//! is at least `W` symbols away from both ends is covered. Prefixes of such
//! chains have the same property, so the search reaches every valid product.
//! Two junctions on one search path with identical `W`-windows (symbols and
//! junction layout) mean the segment between them can be pumped forever;
//! that is reported as non-termination.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::symbol::{Symbol, SymbolSeq};
use crate::tube::Duplex;
use crate::TubeError;

/// Search nodes allowed per product of the cap before giving up.
const WORK_PER_PRODUCT: usize = 16;

struct Assembler<'a> {
    fragments: &'a [SymbolSeq],
    splints: Vec<&'a [Symbol]>,
    /// Splint indices keyed by their first symbol.
    by_head: FxHashMap<Symbol, Vec<usize>>,
    window: usize,
    cap: usize,
    visited: usize,
    /// Valid chains that are not a proper prefix of another valid chain.
    valid: Vec<Vec<u16>>,
    /// Every valid chain longer than one fragment, for suffix marking.
    all_valid: Vec<Vec<u16>>,
    /// Closed junctions on the current search path.
    path: Vec<usize>,
}

/// Returns all maximal products in lexicographic order of their sequence.
pub(crate) fn assemble(
    fragments: &[SymbolSeq],
    splints: &[SymbolSeq],
    cap: usize,
) -> Result<Vec<Duplex>, TubeError> {
    // A one-symbol splint cannot span a junction.
    let splints: Vec<&[Symbol]> = splints
        .iter()
        .filter(|s| s.len() >= 2)
        .map(|s| s.symbols())
        .collect();
    let window = splints.iter().map(|s| s.len() - 1).max().unwrap_or(0);
    let mut by_head: FxHashMap<Symbol, Vec<usize>> = FxHashMap::default();
    for (i, s) in splints.iter().enumerate() {
        by_head.entry(s[0]).or_default().push(i);
    }
    let mut asm = Assembler {
        fragments,
        splints,
        by_head,
        window,
        cap,
        visited: 0,
        valid: Vec::new(),
        all_valid: Vec::new(),
        path: Vec::new(),
    };
    for (f, frag) in fragments.iter().enumerate() {
        if frag.is_empty() {
            continue;
        }
        let mut chain = vec![f as u16];
        let mut symbols = frag.symbols().to_vec();
        let mut junctions = Vec::new();
        asm.explore(&mut chain, &mut symbols, &mut junctions)?;
    }
    asm.into_products()
}

impl<'a> Assembler<'a> {
    fn covering(&self, symbols: &[Symbol], junction: usize) -> Option<(usize, usize)> {
        let lo = junction.saturating_sub(self.window);
        for start in lo..junction {
            let Some(candidates) = self.by_head.get(&symbols[start]) else {
                continue;
            };
            for &si in candidates {
                let s = self.splints[si];
                let end = start + s.len();
                if end > junction && end <= symbols.len() && &symbols[start..end] == s {
                    return Some((start, si));
                }
            }
        }
        None
    }

    /// Whether the windows around junctions `p` and `q` show the same
    /// symbols and the same junction layout.
    fn same_window(&self, symbols: &[Symbol], junctions: &[usize], p: usize, q: usize) -> bool {
        let w = self.window;
        if symbols[p - w..p + w] != symbols[q - w..q + w] {
            return false;
        }
        let layout = |c: usize| {
            let from = junctions.partition_point(|&j| j <= c - w);
            let to = junctions.partition_point(|&j| j < c + w);
            junctions[from..to].iter().map(move |&j| j + w - c)
        };
        layout(p).eq(layout(q))
    }

    /// Explores every extension of the current chain. Returns whether the
    /// chain or one of its extensions is valid.
    fn explore(
        &mut self,
        chain: &mut Vec<u16>,
        symbols: &mut Vec<Symbol>,
        junctions: &mut Vec<usize>,
    ) -> Result<bool, TubeError> {
        self.visited += 1;
        if self.visited > self.cap.saturating_mul(WORK_PER_PRODUCT) {
            return Err(TubeError::StrandExplosion { cap: self.cap });
        }
        // Junctions away from both ends were checked when their window closed.
        let len = symbols.len();
        let w = self.window;
        let left = junctions.iter().take_while(|&&j| j < w);
        let right = junctions
            .iter()
            .rev()
            .take_while(|&&j| j >= w && j + w > len);
        let is_valid = left
            .chain(right)
            .all(|&j| self.covering(symbols, j).is_some());
        let mut extended = false;
        if w > 0 {
            for h in 0..self.fragments.len() {
                let frag = self.fragments[h].symbols();
                if frag.is_empty() {
                    continue;
                }
                let old_len = symbols.len();
                symbols.extend_from_slice(frag);
                junctions.push(old_len);
                chain.push(h as u16);
                let new_len = symbols.len();

                // Junctions whose right-hand window is now complete.
                let closing = || {
                    junctions
                        .iter()
                        .rev()
                        .take_while(move |&&q| q + w > old_len)
                        .copied()
                        .filter(move |&q| q >= w && q + w <= new_len)
                };
                if closing().all(|q| self.covering(symbols, q).is_some()) {
                    let depth = self.path.len();
                    let mut cyclic = false;
                    for q in closing() {
                        if self
                            .path
                            .iter()
                            .any(|&p| self.same_window(symbols, junctions, p, q))
                        {
                            cyclic = true;
                            break;
                        }
                        self.path.push(q);
                    }
                    let result = if cyclic {
                        Err(TubeError::NonTerminating)
                    } else {
                        self.explore(chain, symbols, junctions)
                    };
                    self.path.truncate(depth);
                    extended |= result?;
                }

                chain.pop();
                junctions.pop();
                symbols.truncate(old_len);
            }
        }
        if is_valid {
            if !extended {
                self.valid.push(chain.clone());
            }
            if chain.len() > 1 {
                self.all_valid.push(chain.clone());
            }
        }
        Ok(is_valid || extended)
    }

    fn symbol_len(&self, chain: &[u16]) -> usize {
        chain
            .iter()
            .map(|&f| self.fragments[f as usize].len())
            .sum()
    }

    fn into_products(self) -> Result<Vec<Duplex>, TubeError> {
        // A valid chain of at least `window` symbols that sits inside a longer
        // valid chain is a proper prefix or suffix of a valid chain; shorter
        // ones are caught by marking every short sub-chain. Prefixes were
        // already dropped during the search.
        let mut inner: FxHashSet<&[u16]> = FxHashSet::default();
        for c in &self.all_valid {
            let m = c.len();
            for cut in 1..m {
                inner.insert(&c[cut..]);
            }
            if self.window > 1 {
                for a in 0..m {
                    let mut len = 0;
                    for b in a + 1..=m {
                        len += self.fragments[c[b - 1] as usize].len();
                        if len >= self.window {
                            break;
                        }
                        if b - a < m {
                            inner.insert(&c[a..b]);
                        }
                    }
                }
            }
        }

        let mut products = Vec::new();
        for c in &self.valid {
            if inner.contains(c.as_slice()) {
                continue;
            }
            if products.len() == self.cap {
                return Err(TubeError::StrandExplosion { cap: self.cap });
            }
            products.push(self.duplex(c));
        }
        debug_assert!(self.valid.iter().all(|c| self.symbol_len(c) > 0));
        products.sort();
        products.dedup();
        Ok(products)
    }

    fn duplex(&self, chain: &[u16]) -> Duplex {
        let mut symbols = Vec::with_capacity(self.symbol_len(chain));
        let mut junctions = Vec::with_capacity(chain.len().saturating_sub(1));
        for (i, &f) in chain.iter().enumerate() {
            if i > 0 {
                junctions.push(symbols.len());
            }
            symbols.extend_from_slice(self.fragments[f as usize].symbols());
        }
        let mut used: Vec<(usize, usize)> = junctions
            .iter()
            .filter_map(|&j| self.covering(&symbols, j))
            .collect();
        used.sort_unstable();
        used.dedup();
        Duplex {
            product: SymbolSeq(symbols),
            splints_used: used
                .into_iter()
                .map(|(_, si)| SymbolSeq(self.splints[si].to_vec()))
                .collect(),
        }
    }
}
