//! Breadth-first closure of a graph under local complementation.
//!
//! Orbit members are stored as the packed upper triangle of their adjacency
//! matrix (labels never change, so this is a canonical key). Graphs on at
//! most 16 vertices fit a two-word inline key; larger graphs use a boxed key.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::graphs::{bits, LabeledGraph};

pub(crate) trait PackedKey: Clone + Eq + Hash {
    fn with_words(words: usize) -> Self;
    fn words_mut(&mut self) -> &mut [u64];
    fn words(&self) -> &[u64];
}

impl PackedKey for [u64; 2] {
    fn with_words(words: usize) -> Self {
        debug_assert!(words <= 2);
        [0; 2]
    }
    fn words_mut(&mut self) -> &mut [u64] {
        self
    }
    fn words(&self) -> &[u64] {
        self
    }
}

impl PackedKey for Box<[u64]> {
    fn with_words(words: usize) -> Self {
        vec![0; words].into_boxed_slice()
    }
    fn words_mut(&mut self) -> &mut [u64] {
        self
    }
    fn words(&self) -> &[u64] {
        self
    }
}

/// Reads `len <= 64` bits of `row` starting at bit `from`.
fn extract(row: &[u64], from: usize, len: usize) -> u64 {
    if len == 0 {
        return 0;
    }
    let (w, off) = (from / 64, from % 64);
    let mut v = row[w] >> off;
    if off + len > 64 && w + 1 < row.len() {
        v |= row[w + 1] << (64 - off);
    }
    if len < 64 {
        v &= (1u64 << len) - 1;
    }
    v
}

fn write_bits(out: &mut [u64], at: usize, len: usize, value: u64) {
    if len == 0 {
        return;
    }
    let (w, off) = (at / 64, at % 64);
    out[w] |= value << off;
    if off + len > 64 {
        out[w + 1] |= value >> (64 - off);
    }
}

/// Dense working representation: `n` rows of `words` u64 each.
pub(crate) struct Layout {
    pub n: usize,
    pub words: usize,
    key_words: usize,
}

impl Layout {
    pub fn new(n: usize, words: usize) -> Self {
        let tri = n * n.saturating_sub(1) / 2;
        Layout {
            n,
            words,
            key_words: tri.div_ceil(64).max(1),
        }
    }

    pub fn pack<K: PackedKey>(&self, rows: &[u64]) -> K {
        let mut key = K::with_words(self.key_words);
        let out = key.words_mut();
        let mut at = 0;
        for i in 0..self.n {
            let row = &rows[i * self.words..(i + 1) * self.words];
            let mut from = i + 1;
            while from < self.n {
                let len = (self.n - from).min(64);
                write_bits(out, at, len, extract(row, from, len));
                at += len;
                from += len;
            }
        }
        key
    }

    pub fn unpack<K: PackedKey>(&self, key: &K, rows: &mut [u64]) {
        rows.iter_mut().for_each(|w| *w = 0);
        let src = key.words();
        let mut at = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if src[at / 64] >> (at % 64) & 1 == 1 {
                    rows[i * self.words + j / 64] |= 1 << (j % 64);
                    rows[j * self.words + i / 64] |= 1 << (i % 64);
                }
                at += 1;
            }
        }
    }

    pub fn degree(&self, rows: &[u64], v: usize) -> u32 {
        rows[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones())
            .sum()
    }

    pub fn local_complement(&self, rows: &mut [u64], v: usize, scratch: &mut Vec<u64>) {
        let w = self.words;
        scratch.clear();
        scratch.extend_from_slice(&rows[v * w..(v + 1) * w]);
        for u in bits(scratch) {
            let row = &mut rows[u * w..(u + 1) * w];
            for (r, m) in row.iter_mut().zip(scratch.iter()) {
                *r ^= m;
            }
            row[u / 64] ^= 1 << (u % 64);
        }
    }
}

pub(crate) enum SearchEnd {
    /// Index of the first accepted member.
    Found(usize),
    Exhausted,
    Truncated,
}

pub(crate) struct OrbitSearch<K> {
    pub layout: Layout,
    pub keys: Vec<K>,
    /// `(parent index, vertex complemented)`; the root has no parent.
    pub parents: Vec<Option<(u32, u32)>>,
}

impl<K: PackedKey> OrbitSearch<K> {
    /// Explores the orbit of `g` breadth first, complementing vertices in
    /// index order, until `accept` holds, the orbit is exhausted, or it grows
    /// beyond `budget` members.
    pub fn run<F>(g: &LabeledGraph, budget: usize, mut accept: F) -> (Self, SearchEnd)
    where
        F: FnMut(&[u64]) -> bool,
    {
        let layout = Layout::new(g.vertex_count(), g.words());
        let root: Vec<u64> = g.raw_adjacency().to_vec();
        let mut search = OrbitSearch {
            keys: vec![layout.pack(&root)],
            parents: vec![None],
            layout,
        };
        if accept(&root) {
            return (search, SearchEnd::Found(0));
        }
        let mut index: FxHashMap<K, u32> = FxHashMap::default();
        index.insert(search.keys[0].clone(), 0);
        let mut cur = root.clone();
        let mut next = root;
        let mut scratch = Vec::new();
        let n = search.layout.n;
        let mut head = 0;
        while head < search.keys.len() {
            search.layout.unpack(&search.keys[head], &mut cur);
            for v in 0..n {
                if search.layout.degree(&cur, v) < 2 {
                    continue;
                }
                next.copy_from_slice(&cur);
                search.layout.local_complement(&mut next, v, &mut scratch);
                let key: K = search.layout.pack(&next);
                if index.contains_key(&key) {
                    continue;
                }
                if search.keys.len() >= budget {
                    return (search, SearchEnd::Truncated);
                }
                let id = search.keys.len();
                index.insert(key.clone(), id as u32);
                search.keys.push(key);
                search.parents.push(Some((head as u32, v as u32)));
                if accept(&next) {
                    return (search, SearchEnd::Found(id));
                }
            }
            head += 1;
        }
        (search, SearchEnd::Exhausted)
    }

    /// Vertex indices complemented (in order) to reach member `id`.
    pub fn sequence_to(&self, mut id: usize) -> Vec<usize> {
        let mut seq = Vec::new();
        while let Some((p, v)) = self.parents[id] {
            seq.push(v as usize);
            id = p as usize;
        }
        seq.reverse();
        seq
    }

    pub fn member(&self, id: usize, like: &LabeledGraph) -> LabeledGraph {
        let mut rows = vec![0; self.layout.n * self.layout.words];
        self.layout.unpack(&self.keys[id], &mut rows);
        LabeledGraph::from_raw(like.vertices().to_vec(), rows)
    }
}

/// Runs [`OrbitSearch::run`] with the smallest key type that fits.
pub(crate) fn with_search<R>(
    g: &LabeledGraph,
    budget: usize,
    accept: impl FnMut(&[u64]) -> bool,
    finish: impl FnOnce(SearchView<'_>, SearchEnd) -> R,
) -> R {
    if g.vertex_count() <= 16 {
        let (s, end) = OrbitSearch::<[u64; 2]>::run(g, budget, accept);
        finish(SearchView::Small(&s), end)
    } else {
        let (s, end) = OrbitSearch::<Box<[u64]>>::run(g, budget, accept);
        finish(SearchView::Large(&s), end)
    }
}

pub(crate) enum SearchView<'a> {
    Small(&'a OrbitSearch<[u64; 2]>),
    Large(&'a OrbitSearch<Box<[u64]>>),
}

impl SearchView<'_> {
    pub fn len(&self) -> usize {
        match self {
            SearchView::Small(s) => s.keys.len(),
            SearchView::Large(s) => s.keys.len(),
        }
    }

    pub fn sequence_to(&self, id: usize) -> Vec<usize> {
        match self {
            SearchView::Small(s) => s.sequence_to(id),
            SearchView::Large(s) => s.sequence_to(id),
        }
    }

    pub fn member(&self, id: usize, like: &LabeledGraph) -> LabeledGraph {
        match self {
            SearchView::Small(s) => s.member(id, like),
            SearchView::Large(s) => s.member(id, like),
        }
    }
}
