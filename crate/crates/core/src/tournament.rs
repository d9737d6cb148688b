//! Tournaments: the boards RPS games are played on.
//!
//! `beats(i, j)` means object `i` defeats object `j`. A win for `i` is an
//! incoming edge at `i` in payoff terms, so `e_in[i]` counts the opponents `i`
//! defeats and `e_out[i]` the opponents that defeat it. Edge lists use the
//! same orientation: a line `i j` means "i beats j".

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order for which bitmask rows are used.
pub const MAX_VERTICES: usize = 64;
/// Default largest order for isomorphism-free enumeration.
pub const MAX_ISO_ENUMERATION: usize = 8;
/// Largest order for labeled enumeration.
pub const MAX_LABELED_ENUMERATION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("tournament needs at least one vertex")]
    Empty,
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a {n}-tournament")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) listed twice")]
    DuplicateEdge(usize, usize),
    #[error("contradictory edges between {0} and {1}")]
    ContradictoryPair(usize, usize),
    #[error("no edge between {0} and {1}")]
    MissingPair(usize, usize),
    #[error("expected {expected} labels, got {actual}")]
    LabelCount { expected: usize, actual: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("enumeration of order {n} exceeds the limit of {limit}")]
    EnumerationTooLarge { n: usize, limit: usize },
    #[error("k = {k} out of range 1..={max} for a {n}-tournament")]
    KOutOfRange { k: usize, max: usize, n: usize },
    #[error("operation needs an odd number of vertices, got {0}")]
    EvenOrder(usize),
}

/// An orientation of the complete graph `K_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    /// Bit `j` of `rows[i]` is set when `i` beats `j`.
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// Opponents each object defeats.
    pub e_in: Vec<usize>,
    /// Opponents each object loses to.
    pub e_out: Vec<usize>,
    pub e_min: Vec<usize>,
}

impl Tournament {
    /// Builds a tournament from `(winner, loser)` pairs covering every
    /// unordered pair exactly once.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, TournamentError> {
        check_order(n)?;
        let mut rows = vec![0u64; n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(TournamentError::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(TournamentError::SelfLoop(i));
            }
            if rows[i] >> j & 1 == 1 {
                return Err(TournamentError::DuplicateEdge(i, j));
            }
            if rows[j] >> i & 1 == 1 {
                return Err(TournamentError::ContradictoryPair(i.min(j), i.max(j)));
            }
            rows[i] |= 1 << j;
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i] >> j & 1 == 0 && rows[j] >> i & 1 == 0 {
                    return Err(TournamentError::MissingPair(i, j));
                }
            }
        }
        Ok(Tournament {
            n,
            rows,
            labels: None,
        })
    }

    /// `i_beats_j(i, j)` is consulted once for every pair `i < j`.
    pub fn from_fn(
        n: usize,
        mut i_beats_j: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self, TournamentError> {
        check_order(n)?;
        let mut rows = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if i_beats_j(i, j) {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
            }
        }
        Ok(Tournament {
            n,
            rows,
            labels: None,
        })
    }

    /// Inverse of [`Tournament::code`].
    pub fn from_code(n: usize, code: u64) -> Result<Self, TournamentError> {
        if n > 11 {
            return Err(TournamentError::TooManyVertices(n));
        }
        let total = pair_count(n);
        let mut bit = total;
        let mut rows = vec![0u64; n];
        for p in 1..n {
            for q in 0..p {
                bit -= 1;
                if code >> bit & 1 == 1 {
                    rows[q] |= 1 << p;
                } else {
                    rows[p] |= 1 << q;
                }
            }
        }
        check_order(n)?;
        Ok(Tournament {
            n,
            rows,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, TournamentError> {
        if labels.len() != self.n {
            return Err(TournamentError::LabelCount {
                expected: self.n,
                actual: labels.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(TournamentError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Bitmask of the vertices `i` beats.
    pub fn beaten_by_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `i`, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Resolves a label, or a plain index when the text is numeric.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(pos) = labels.iter().position(|l| l == name) {
                return Some(pos);
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.n)
    }

    pub fn wins(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn losses(&self, i: usize) -> usize {
        self.n - 1 - self.wins(i)
    }

    /// Edges as `(winner, loser)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(pair_count(self.n));
        for i in 0..self.n {
            for j in 0..self.n {
                if self.beats(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let e_in: Vec<usize> = (0..self.n).map(|i| self.wins(i)).collect();
        let e_out: Vec<usize> = (0..self.n).map(|i| self.losses(i)).collect();
        let e_min = e_in.iter().zip(&e_out).map(|(&a, &b)| a.min(b)).collect();
        DegreeProfile { e_in, e_out, e_min }
    }

    /// Relabels so that old vertex `perm[k]` becomes new vertex `k`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for (a, &pa) in perm.iter().enumerate() {
            for (b, &pb) in perm.iter().enumerate() {
                if self.beats(pa, pb) {
                    rows[a] |= 1 << b;
                }
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| perm.iter().map(|&p| l[p].clone()).collect());
        Tournament {
            n: self.n,
            rows,
            labels,
        }
    }

    /// Every edge flipped.
    pub fn reversed(&self) -> Self {
        let mask = full_mask(self.n);
        let rows = (0..self.n).map(|i| !self.rows[i] & mask & !(1u64 << i)).collect();
        Tournament {
            n: self.n,
            rows,
            labels: self.labels.clone(),
        }
    }

    /// Drops vertex `v`, keeping the relative order of the rest.
    pub fn remove_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        let mut sub = self.clone().without_labels().permute_subset(&keep);
        if let Some(l) = &self.labels {
            sub.labels = Some(keep.iter().map(|&i| l[i].clone()).collect());
        }
        sub
    }

    fn permute_subset(&self, keep: &[usize]) -> Self {
        let mut rows = vec![0u64; keep.len()];
        for (a, &pa) in keep.iter().enumerate() {
            for (b, &pb) in keep.iter().enumerate() {
                if self.beats(pa, pb) {
                    rows[a] |= 1 << b;
                }
            }
        }
        Tournament {
            n: keep.len(),
            rows,
            labels: None,
        }
    }

    /// Upper-triangle bit string packed into an integer, most significant bit
    /// first. Pairs are taken column by column: `(0,1), (0,2), (1,2),
    /// (0,3), …`; a bit is set when the lower index beats the higher one.
    pub fn code(&self) -> u64 {
        assert!(self.n <= 11, "codes fit orders up to 11");
        let mut code = 0u64;
        for p in 1..self.n {
            for q in 0..p {
                code = code << 1 | self.beats(q, p) as u64;
            }
        }
        code
    }

    /// Strongly connected components in Tarjan's order (sinks first).
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        Tarjan::new(self).run()
    }

    pub fn is_strong(&self) -> bool {
        self.strong_components().len() == 1
    }

    /// The minimal code over every relabeling that lists vertices by
    /// nondecreasing number of wins. Isomorphic tournaments share it.
    pub fn canonical_code(&self) -> u64 {
        canonical_search(self).0
    }

    /// Representative of the isomorphism class, with its canonical code.
    pub fn canonical_form(&self) -> Tournament {
        let (_, perm) = canonical_search(self);
        self.permute(&perm)
    }

    pub fn is_isomorphic(&self, other: &Tournament) -> bool {
        self.n == other.n
            && sorted(self.degree_profile().e_in) == sorted(other.degree_profile().e_in)
            && self.canonical_code() == other.canonical_code()
    }

    /// Edge-list text: a line with `n`, an optional `# labels:` directive,
    /// then one `i j` line per edge meaning "i beats j".
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        if let Some(labels) = &self.labels {
            out.push_str(&format!("# labels: {}\n", labels.join(" ")));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    /// Parses the edge-list format. `#` starts a comment; a comment of the
    /// form `# labels: a b c` names the vertices in index order.
    pub fn parse_edge_list(text: &str) -> Result<Self, TournamentError> {
        let mut n: Option<usize> = None;
        let mut labels: Option<(usize, Vec<String>)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let (body, comment) = match raw.find('#') {
                Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
                None => (raw, None),
            };
            if let Some(c) = comment {
                if let Some(rest) = c.trim().strip_prefix("labels:") {
                    labels = Some((line_no, rest.split_whitespace().map(str::to_string).collect()));
                }
            }
            let body = body.trim();
            if body.is_empty() {
                continue;
            }
            let parse_err = |message: String| TournamentError::Parse {
                line: line_no,
                message,
            };
            let tokens: Vec<&str> = body.split_whitespace().collect();
            match n {
                None => {
                    if tokens.len() != 1 {
                        return Err(parse_err(format!("expected vertex count, found {body:?}")));
                    }
                    let count = tokens[0]
                        .parse::<usize>()
                        .map_err(|_| parse_err(format!("invalid vertex count {:?}", tokens[0])))?;
                    n = Some(count);
                }
                Some(count) => {
                    if tokens.len() != 2 {
                        return Err(parse_err(format!("expected `i j`, found {body:?}")));
                    }
                    let mut pair = [0usize; 2];
                    for (slot, tok) in pair.iter_mut().zip(&tokens) {
                        *slot = tok
                            .parse::<usize>()
                            .map_err(|_| parse_err(format!("invalid vertex index {tok:?}")))?;
                        if *slot >= count {
                            return Err(parse_err(format!("vertex {slot} out of range for n = {count}")));
                        }
                    }
                    if pair[0] == pair[1] {
                        return Err(parse_err(format!("self-loop at vertex {}", pair[0])));
                    }
                    edges.push((pair[0], pair[1], line_no));
                }
            }
        }
        let n = n.ok_or(TournamentError::Parse {
            line: text.lines().count().max(1),
            message: "missing vertex count".to_string(),
        })?;
        // Re-run validation edge by edge so errors carry line numbers.
        let mut seen = vec![0u64; n];
        for &(i, j, line) in &edges {
            if seen[i] >> j & 1 == 1 {
                return Err(TournamentError::Parse {
                    line,
                    message: format!("edge ({i}, {j}) listed twice"),
                });
            }
            if seen[j] >> i & 1 == 1 {
                return Err(TournamentError::Parse {
                    line,
                    message: format!("edge ({i}, {j}) contradicts an earlier ({j}, {i})"),
                });
            }
            seen[i] |= 1 << j;
        }
        let plain: Vec<(usize, usize)> = edges.iter().map(|&(i, j, _)| (i, j)).collect();
        let t = Tournament::from_edge_list(n, &plain)?;
        match labels {
            Some((line, l)) => t.with_labels(l).map_err(|e| TournamentError::Parse {
                line,
                message: e.to_string(),
            }),
            None => Ok(t),
        }
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}, edges={:?}", self.n, self.edges())?;
        if let Some(l) = &self.labels {
            write!(f, ", labels={l:?}")?;
        }
        write!(f, ")")
    }
}

fn check_order(n: usize) -> Result<(), TournamentError> {
    if n == 0 {
        Err(TournamentError::Empty)
    } else if n > MAX_VERTICES {
        Err(TournamentError::TooManyVertices(n))
    } else {
        Ok(())
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

struct Tarjan<'a> {
    t: &'a Tournament,
    next_index: usize,
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl<'a> Tarjan<'a> {
    fn new(t: &'a Tournament) -> Self {
        Tarjan {
            t,
            next_index: 0,
            index: vec![None; t.n],
            low: vec![0; t.n],
            on_stack: vec![false; t.n],
            stack: Vec::new(),
            components: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Vec<usize>> {
        for v in 0..self.t.n {
            if self.index[v].is_none() {
                self.connect(v);
            }
        }
        self.components
    }

    fn connect(&mut self, v: usize) {
        self.index[v] = Some(self.next_index);
        self.low[v] = self.next_index;
        self.next_index += 1;
        self.stack.push(v);
        self.on_stack[v] = true;

        let mut succ = self.t.rows[v];
        while succ != 0 {
            let w = succ.trailing_zeros() as usize;
            succ &= succ - 1;
            match self.index[w] {
                None => {
                    self.connect(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                Some(_) => {}
            }
        }

        if Some(self.low[v]) == self.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("tarjan stack");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            self.components.push(comp);
        }
    }
}

/// Branch-and-bound over score-respecting relabelings. Codes are built one
/// column at a time, so a partial assignment fixes a prefix of the code and
/// can be pruned against the best code found so far.
fn canonical_search(t: &Tournament) -> (u64, Vec<usize>) {
    let n = t.n;
    assert!(n <= 11, "canonical codes fit orders up to 11");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (t.wins(v), v));
    // slot_class[p] = wins required at position p
    let slot_wins: Vec<usize> = order.iter().map(|&v| t.wins(v)).collect();

    struct Search<'a> {
        t: &'a Tournament,
        n: usize,
        slot_wins: Vec<usize>,
        perm: Vec<usize>,
        used: u64,
        best: Option<(u64, Vec<usize>)>,
    }

    impl Search<'_> {
        fn go(&mut self, pos: usize, prefix: u64, bits: usize) {
            if let Some((best, _)) = &self.best {
                let total = pair_count(self.n);
                let best_prefix = if bits == 0 { 0 } else { best >> (total - bits) };
                if prefix > best_prefix {
                    return;
                }
            }
            if pos == self.n {
                let better = match &self.best {
                    None => true,
                    Some((b, _)) => prefix < *b,
                };
                if better {
                    self.best = Some((prefix, self.perm.clone()));
                }
                return;
            }
            for v in 0..self.n {
                if self.used >> v & 1 == 1 || self.t.wins(v) != self.slot_wins[pos] {
                    continue;
                }
                let mut next = prefix;
                for q in 0..pos {
                    next = next << 1 | self.t.beats(self.perm[q], v) as u64;
                }
                self.perm.push(v);
                self.used |= 1 << v;
                self.go(pos + 1, next, bits + pos);
                self.used &= !(1 << v);
                self.perm.pop();
            }
        }
    }

    let mut search = Search {
        t,
        n,
        slot_wins,
        perm: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    search.go(0, 0, 0);
    search.best.expect("at least one relabeling")
}

/// Stream of tournaments on `n` vertices.
pub enum TournamentStream {
    Labeled { n: usize, next: u64, end: u64 },
    Classes(std::vec::IntoIter<Tournament>),
}

impl Iterator for TournamentStream {
    type Item = Tournament;

    fn next(&mut self) -> Option<Tournament> {
        match self {
            TournamentStream::Labeled { n, next, end } => {
                if *next >= *end {
                    return None;
                }
                let t = Tournament::from_code(*n, *next).expect("valid code");
                *next += 1;
                Some(t)
            }
            TournamentStream::Classes(it) => it.next(),
        }
    }
}

/// All labeled tournaments (`up_to_iso = false`) or one canonical
/// representative per isomorphism class, in increasing canonical-code order.
pub fn enumerate_tournaments(n: usize, up_to_iso: bool) -> Result<TournamentStream, TournamentError> {
    let limit = if up_to_iso {
        MAX_ISO_ENUMERATION
    } else {
        MAX_LABELED_ENUMERATION
    };
    enumerate_tournaments_with_limit(n, up_to_iso, limit)
}

/// As [`enumerate_tournaments`] with an explicit order limit (at most 10).
pub fn enumerate_tournaments_with_limit(
    n: usize,
    up_to_iso: bool,
    limit: usize,
) -> Result<TournamentStream, TournamentError> {
    let limit = limit.min(10);
    if n > limit {
        return Err(TournamentError::EnumerationTooLarge { n, limit });
    }
    check_order(n)?;
    if up_to_iso {
        Ok(TournamentStream::Classes(isomorphism_classes(n).into_iter()))
    } else {
        Ok(TournamentStream::Labeled {
            n,
            next: 0,
            end: 1u64 << pair_count(n),
        })
    }
}

/// Canonical representatives, grown one vertex at a time: every class on
/// `n` vertices arises from some class on `n - 1` vertices plus a vertex.
fn isomorphism_classes(n: usize) -> Vec<Tournament> {
    let mut classes = vec![Tournament::from_code(1, 0).expect("single vertex")];
    for m in 2..=n {
        let candidates: Vec<(usize, u64)> = (0..classes.len())
            .flat_map(|c| (0..1u64 << (m - 1)).map(move |mask| (c, mask)))
            .collect();
        let codes: BTreeSet<u64> = candidates
            .par_iter()
            .map(|&(c, mask)| {
                let base = &classes[c];
                let ext = Tournament::from_fn(m, |i, j| {
                    if j == m - 1 {
                        mask >> i & 1 == 1
                    } else {
                        base.beats(i, j)
                    }
                })
                .expect("valid order");
                ext.canonical_code()
            })
            .collect();
        classes = codes
            .into_iter()
            .map(|code| Tournament::from_code(m, code).expect("valid code"))
            .collect();
    }
    classes
}

fn k_range(n: usize) -> usize {
    (n / 2 + 1).min(n)
}

/// Necessary condition for playability on the `k` objects with the fewest
/// losses: each of them is beaten by some object outside the set, or the
/// objects beating the set are everything outside it. Ties at the cut are
/// resolved by checking every admissible choice; all must pass.
pub fn k_minimizing_check(t: &Tournament, k: usize) -> Result<bool, TournamentError> {
    let n = t.len();
    let max = k_range(n);
    if k == 0 || k > max {
        return Err(TournamentError::KOutOfRange { k, max, n });
    }
    let losses: Vec<usize> = (0..n).map(|i| t.losses(i)).collect();
    let mut sorted_losses = losses.clone();
    sorted_losses.sort_unstable();
    let cut = sorted_losses[k - 1];
    let below: u64 = (0..n).filter(|&i| losses[i] < cut).fold(0, |m, i| m | 1 << i);
    let tied: Vec<usize> = (0..n).filter(|&i| losses[i] == cut).collect();
    let need = k - below.count_ones() as usize;

    let mut ok = true;
    for_each_subset(&tied, need, &mut |chosen| {
        if ok {
            let set = chosen.iter().fold(below, |m, &i| m | 1 << i);
            ok = k_minimizing_set_ok(t, set);
        }
    });
    Ok(ok)
}

fn k_minimizing_set_ok(t: &Tournament, set: u64) -> bool {
    let n = t.len();
    let outside = full_mask(n) & !set;
    let members = (0..n).filter(|&m| set >> m & 1 == 1);
    let each_beaten_from_outside = members
        .clone()
        .all(|m| (0..n).any(|x| outside >> x & 1 == 1 && t.beats(x, m)));
    let beaters = (0..n)
        .filter(|&x| outside >> x & 1 == 1 && t.rows[x] & set != 0)
        .fold(0u64, |acc, x| acc | 1 << x);
    each_beaten_from_outside || beaters == outside
}

fn for_each_subset(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], size: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == size {
            f(acc);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - acc.len() {
                break;
            }
            acc.push(items[i]);
            rec(items, size, i + 1, acc, f);
            acc.pop();
        }
    }
    rec(items, size, 0, &mut Vec::with_capacity(size), f);
}

/// Lower bounds on sums of the smallest loss and win counts that every
/// playable game on `2m + 1` objects meets: for `k <= m` the `k` smallest sum
/// to at least `k(k+1)/2`, and the `m + 1` smallest to at least
/// `m(m+1)/2 + m`.
pub fn landau_bound_check(t: &Tournament) -> Result<bool, TournamentError> {
    let n = t.len();
    if n.is_multiple_of(2) {
        return Err(TournamentError::EvenOrder(n));
    }
    let m = n / 2;
    let profile = t.degree_profile();
    for seq in [sorted(profile.e_out), sorted(profile.e_in)] {
        let mut prefix = 0;
        for k in 1..=m {
            prefix += seq[k - 1];
            if prefix < k * (k + 1) / 2 {
                return Ok(false);
            }
        }
        if prefix + seq[m] < m * (m + 1) / 2 + m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Valid `k` values for [`k_minimizing_check`].
pub fn k_minimizing_range(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=k_range(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Tournament {
        Tournament::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn transitive(n: usize) -> Tournament {
        Tournament::from_fn(n, |_, _| true).unwrap()
    }

    /// rock, paper, scissors, well
    fn rps_well() -> Tournament {
        Tournament::from_edge_list(4, &[(0, 2), (2, 1), (1, 0), (3, 0), (3, 2), (1, 3)])
            .unwrap()
            .with_labels(vec![
                "rock".into(),
                "paper".into(),
                "scissors".into(),
                "well".into(),
            ])
            .unwrap()
    }

    #[test]
    fn edge_list_construction() {
        let t = three_cycle();
        assert!(t.beats(0, 1) && t.beats(1, 2) && t.beats(2, 0));
        assert!(Tournament::from_edge_list(2, &[(0, 1)]).is_ok());
        assert_eq!(
            Tournament::from_edge_list(3, &[(0, 1), (1, 0), (1, 2)]),
            Err(TournamentError::ContradictoryPair(0, 1))
        );
        assert_eq!(
            Tournament::from_edge_list(3, &[(0, 1), (0, 1)]),
            Err(TournamentError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Tournament::from_edge_list(3, &[(0, 1), (1, 2)]),
            Err(TournamentError::MissingPair(0, 2))
        );
        assert_eq!(
            Tournament::from_edge_list(2, &[(1, 1)]),
            Err(TournamentError::SelfLoop(1))
        );
        assert_eq!(Tournament::from_edge_list(0, &[]), Err(TournamentError::Empty));
    }

    #[test]
    fn degree_profiles() {
        assert_eq!(three_cycle().degree_profile().e_in, vec![1, 1, 1]);
        let p = transitive(3).degree_profile();
        assert_eq!(p.e_in, vec![2, 1, 0]);
        assert_eq!(p.e_out, vec![0, 1, 2]);
        assert_eq!(p.e_min, vec![0, 1, 0]);
    }

    #[test]
    fn strong_connectivity() {
        assert!(three_cycle().is_strong());
        assert!(!transitive(3).is_strong());
        assert_eq!(transitive(4).strong_components().len(), 4);
        assert!(Tournament::from_code(1, 0).unwrap().is_strong());
    }

    #[test]
    fn codes_round_trip() {
        for code in 0..64u64 {
            let t = Tournament::from_code(4, code).unwrap();
            assert_eq!(t.code(), code);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_tournaments(3, false).unwrap().count(), 8);
        assert_eq!(enumerate_tournaments(3, true).unwrap().count(), 2);
        assert_eq!(enumerate_tournaments(4, true).unwrap().count(), 4);
        assert_eq!(enumerate_tournaments(5, true).unwrap().count(), 12);
        assert_eq!(enumerate_tournaments(6, true).unwrap().count(), 56);
        assert!(matches!(
            enumerate_tournaments(9, true),
            Err(TournamentError::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn canonical_code_is_relabeling_invariant() {
        let t = Tournament::from_code(5, 0b1011001110).unwrap();
        let perm = [3, 0, 4, 1, 2];
        assert_eq!(t.canonical_code(), t.permute(&perm).canonical_code());
        assert_eq!(t.canonical_form().code(), t.canonical_code());
        assert!(t.is_isomorphic(&t.permute(&perm)));
    }

    #[test]
    fn edge_list_text_round_trip() {
        let t = rps_well();
        let text = t.to_edge_list_text();
        let back = Tournament::parse_edge_list(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn edge_list_parse_errors_carry_lines() {
        let err = Tournament::parse_edge_list("3\n0 1\n# c\n1 0\n").unwrap_err();
        assert!(matches!(err, TournamentError::Parse { line: 4, .. }), "{err:?}");
        let err = Tournament::parse_edge_list("3\n0 x\n").unwrap_err();
        assert!(matches!(err, TournamentError::Parse { line: 2, .. }));
        let err = Tournament::parse_edge_list("2\n0 5\n").unwrap_err();
        assert!(matches!(err, TournamentError::Parse { line: 2, .. }));
        assert!(Tournament::parse_edge_list("").is_err());
        assert_eq!(
            Tournament::parse_edge_list("3\n0 1\n1 2\n"),
            Err(TournamentError::MissingPair(0, 2))
        );
    }

    #[test]
    fn k_minimizing_examples() {
        assert!(k_minimizing_check(&three_cycle(), 1).unwrap());
        // paper and well both lose once; either choice passes at k = 1
        let well = rps_well();
        assert!(k_minimizing_check(&well, 1).unwrap());
        // {paper, well}: well is beaten only by paper, and scissors alone
        // beats the set from outside while rock does not
        assert!(!k_minimizing_check(&well, 2).unwrap());
        assert!(k_minimizing_check(&three_cycle(), 3).is_err());
        assert!(k_minimizing_check(&three_cycle(), 0).is_err());
    }

    #[test]
    fn landau_examples() {
        assert!(landau_bound_check(&three_cycle()).unwrap());
        assert!(!landau_bound_check(&transitive(5)).unwrap());
        assert_eq!(
            landau_bound_check(&transitive(4)),
            Err(TournamentError::EvenOrder(4))
        );
    }

    #[test]
    fn remove_and_reverse() {
        let t = rps_well();
        let sub = t.remove_vertex(3);
        assert_eq!(sub.len(), 3);
        assert!(sub.is_strong());
        assert_eq!(sub.labels().unwrap()[2], "scissors");
        let r = t.reversed();
        assert!(r.beats(2, 0) && r.beats(0, 3));
        assert_eq!(r.reversed(), t);
    }
}
