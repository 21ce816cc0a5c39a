//! Coset enumeration (HLT with lookahead) over a finitely presented group
//! relative to a finitely generated subgroup.
//!
//! Columns are laid out as `a, a⁻¹, b, b⁻¹, …` (see [`Letter::column`]).
//! Coincidences are processed with a union-find forwarding array, merging
//! rows immediately.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::Permutation;
use crate::words::{Letter, Presentation, Word};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_cosets: usize,
    pub max_definitions: usize,
}

impl EnumerationLimits {
    pub fn new(max_cosets: usize, max_definitions: usize) -> Result<Self, EnumerationError> {
        if max_cosets == 0 || max_definitions == 0 {
            return Err(EnumerationError::InvalidLimits);
        }
        Ok(EnumerationLimits {
            max_cosets,
            max_definitions,
        })
    }

    pub fn with_max_cosets(self, max_cosets: usize) -> Result<Self, EnumerationError> {
        EnumerationLimits::new(max_cosets, self.max_definitions)
    }
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: 2_000_000,
            max_definitions: 10_000_000,
        }
    }
}

/// Enumeration failures. The limit variants are inconclusive: the index may
/// be infinite or merely larger than the limits allow.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset limit {limit} reached (inconclusive)")]
    CosetLimit { limit: usize },
    #[error("definition limit {limit} reached (inconclusive)")]
    DefinitionLimit { limit: usize },
    #[error("enumeration limits must be positive")]
    InvalidLimits,
    #[error("subgroup generator uses an undeclared generator")]
    SubgroupOutOfRange,
}

impl EnumerationError {
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            EnumerationError::CosetLimit { .. } | EnumerationError::DefinitionLimit { .. }
        )
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("coset table is not closed")]
    NotClosed,
    #[error("row {row} has wrong width")]
    RowWidth { row: usize },
    #[error("entry ({coset}, column {column}) points outside the table")]
    OutOfRange { coset: usize, column: usize },
    #[error("entry ({coset}, column {column}) has no matching inverse entry")]
    Inconsistent { coset: usize, column: usize },
    #[error("relator {relator} does not close at coset {coset}")]
    RelatorFails { relator: usize, coset: usize },
    #[error("subgroup generator {index} does not fix coset 1")]
    SubgroupMoves { index: usize },
    #[error("generator action is not transitive")]
    NotTransitive,
    #[error("relabeling must be a permutation fixing coset 1")]
    BadRelabeling,
}

/// A coset table. Coset 0 is the subgroup coset. Entries are `None` when
/// undefined; tables returned by [`enumerate`] are closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    presentation: Presentation,
    subgroup: Vec<Word>,
    width: usize,
    entries: Vec<u32>,
}

impl CosetTable {
    /// Build a table from explicit rows (columns `a, a⁻¹, b, b⁻¹, …`).
    /// Checks entry consistency only; the table may be open.
    pub fn from_rows(
        presentation: Presentation,
        subgroup: Vec<Word>,
        rows: &[Vec<Option<usize>>],
    ) -> Result<Self, TableError> {
        let width = 2 * presentation.num_generators();
        let mut entries = Vec::with_capacity(rows.len() * width);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(TableError::RowWidth { row: r });
            }
            for (column, e) in row.iter().enumerate() {
                match e {
                    Some(d) if *d >= rows.len() => {
                        return Err(TableError::OutOfRange { coset: r, column })
                    }
                    Some(d) => entries.push(*d as u32),
                    None => entries.push(NONE),
                }
            }
        }
        let table = CosetTable {
            presentation,
            subgroup,
            width,
            entries,
        };
        table.check_consistency()?;
        Ok(table)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    pub fn num_cosets(&self) -> usize {
        self.entries.len().checked_div(self.width).unwrap_or(1)
    }

    /// Same as [`num_cosets`](Self::num_cosets) for a closed table.
    pub fn index(&self) -> usize {
        self.num_cosets()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entry(&self, coset: usize, letter: Letter) -> Option<usize> {
        let e = self.entries[coset * self.width + letter.column()];
        (e != NONE).then_some(e as usize)
    }

    fn raw(&self, coset: usize, column: usize) -> u32 {
        self.entries[coset * self.width + column]
    }

    pub fn is_closed(&self) -> bool {
        self.entries.iter().all(|&e| e != NONE)
    }

    /// Trace `w` from `coset`; `None` if an undefined entry is hit.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(coset, |c, &l| self.entry(c, l))
    }

    fn check_consistency(&self) -> Result<(), TableError> {
        for c in 0..self.num_cosets() {
            for col in 0..self.width {
                let d = self.raw(c, col);
                if d != NONE && self.raw(d as usize, col ^ 1) != c as u32 {
                    return Err(TableError::Inconsistent {
                        coset: c,
                        column: col,
                    });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive closure audit: consistency, every relator closes at every
    /// coset, subgroup generators fix coset 0, and the action is transitive.
    pub fn audit(&self) -> Result<(), TableError> {
        if !self.is_closed() {
            return Err(TableError::NotClosed);
        }
        self.check_consistency()?;
        for (ri, r) in self.presentation.relators().iter().enumerate() {
            for c in 0..self.num_cosets() {
                if self.trace(c, r) != Some(c) {
                    return Err(TableError::RelatorFails {
                        relator: ri,
                        coset: c,
                    });
                }
            }
        }
        for (index, h) in self.subgroup.iter().enumerate() {
            if self.trace(0, h) != Some(0) {
                return Err(TableError::SubgroupMoves { index });
            }
        }
        if self.bfs_order().len() != self.num_cosets() {
            return Err(TableError::NotTransitive);
        }
        Ok(())
    }

    /// Cosets in breadth-first order from coset 0, scanning columns in order.
    fn bfs_order(&self) -> Vec<usize> {
        let n = self.num_cosets();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[0] = true;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in 0..self.width {
                let d = self.raw(c, col);
                if d != NONE && !seen[d as usize] {
                    seen[d as usize] = true;
                    order.push(d as usize);
                }
            }
        }
        order
    }

    /// Renumber cosets by `perm` (`perm[old] = new`), which must fix coset 0.
    pub fn relabeled(&self, perm: &[usize]) -> Result<CosetTable, TableError> {
        let n = self.num_cosets();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.first() != Some(&0) {
            return Err(TableError::BadRelabeling);
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(TableError::BadRelabeling);
            }
            seen[p] = true;
        }
        Ok(self.renumbered(perm, n))
    }

    fn renumbered(&self, perm: &[usize], new_len: usize) -> CosetTable {
        let mut entries = vec![NONE; new_len * self.width];
        for (old, &new) in perm.iter().enumerate() {
            if new == usize::MAX {
                continue;
            }
            for col in 0..self.width {
                let d = self.raw(old, col);
                entries[new * self.width + col] = if d == NONE {
                    NONE
                } else {
                    perm[d as usize] as u32
                };
            }
        }
        CosetTable {
            presentation: self.presentation.clone(),
            subgroup: self.subgroup.clone(),
            width: self.width,
            entries,
        }
    }

    /// Canonical numbering: breadth-first from coset 0, columns in declared
    /// order. Equivalent closed tables standardize identically.
    pub fn standardize(&self) -> Result<CosetTable, TableError> {
        if !self.is_closed() {
            return Err(TableError::NotClosed);
        }
        let order = self.bfs_order();
        if order.len() != self.num_cosets() {
            return Err(TableError::NotTransitive);
        }
        let mut perm = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        Ok(self.renumbered(&perm, order.len()))
    }

    /// One permutation of the cosets per generator.
    pub fn permutation_rep(&self) -> Result<Vec<Permutation>, TableError> {
        if !self.is_closed() {
            return Err(TableError::NotClosed);
        }
        Ok((0..self.presentation.num_generators())
            .map(|g| {
                Permutation::from_images(
                    (0..self.num_cosets())
                        .map(|c| self.raw(c, 2 * g))
                        .collect(),
                )
            })
            .collect())
    }

    /// Permutation induced by `w` on the cosets.
    pub fn word_image(&self, w: &Word) -> Result<Permutation, TableError> {
        if !self.is_closed() {
            return Err(TableError::NotClosed);
        }
        Ok(Permutation::from_images(
            (0..self.num_cosets())
                .map(|c| self.trace(c, w).expect("closed table") as u32)
                .collect(),
        ))
    }

    /// Short digest identifying the presentation.
    pub fn presentation_hash(&self) -> String {
        crate::digest(self.presentation.to_string().as_bytes())
    }

    /// Text dump: one header line, then one row per coset listing the 1-based
    /// targets for each signed generator (`-` when undefined).
    pub fn dump(&self) -> String {
        let names = self.presentation.names();
        let subgroup: Vec<String> = self
            .subgroup
            .iter()
            .map(|w| w.display(&names).to_string())
            .collect();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# presentation {} subgroup [{}] cosets {}",
            self.presentation_hash(),
            subgroup.join(", "),
            self.num_cosets()
        );
        for c in 0..self.num_cosets() {
            let row: Vec<String> = (0..self.width)
                .map(|col| match self.raw(c, col) {
                    NONE => "-".to_string(),
                    d => (d + 1).to_string(),
                })
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

enum Scan {
    Done,
    Full,
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    definitions: usize,
    limits: EnumerationLimits,
    relators: Vec<Vec<usize>>,
    queue: VecDeque<u32>,
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.forward.len()
    }

    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.width + col]
    }

    fn set(&mut self, c: usize, col: usize, d: u32) {
        self.table[c * self.width + col] = d;
    }

    fn alive(&self, c: usize) -> bool {
        self.forward[c] == c as u32
    }

    fn new_coset(&mut self) -> Result<Option<u32>, EnumerationError> {
        if self.definitions >= self.limits.max_definitions {
            return Err(EnumerationError::DefinitionLimit {
                limit: self.limits.max_definitions,
            });
        }
        if self.rows() >= self.limits.max_cosets {
            return Ok(None);
        }
        let c = self.rows() as u32;
        self.forward.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.width));
        self.live += 1;
        self.definitions += 1;
        Ok(Some(c))
    }

    fn define(&mut self, c: usize, col: usize) -> Result<bool, EnumerationError> {
        match self.new_coset()? {
            Some(d) => {
                self.set(c, col, d);
                self.set(d as usize, col ^ 1, c as u32);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != r {
            let next = self.forward[x as usize];
            self.forward[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.forward[kill as usize] = keep;
        self.live -= 1;
        self.queue.push_back(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            let e = e as usize;
            for col in 0..self.width {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                self.set(f as usize, col ^ 1, NONE);
                let e1 = self.rep(e as u32);
                let f1 = self.rep(f);
                let e1x = self.get(e1 as usize, col);
                if e1x != NONE {
                    self.merge(f1, e1x);
                    continue;
                }
                let f1x = self.get(f1 as usize, col ^ 1);
                if f1x != NONE {
                    self.merge(e1, f1x);
                    continue;
                }
                self.set(e1 as usize, col, f1);
                self.set(f1 as usize, col ^ 1, e1);
            }
        }
    }

    /// HLT scan of `word` (as columns) at coset `c`, defining cosets as needed.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<Scan, EnumerationError> {
        if word.is_empty() {
            return Ok(Scan::Done);
        }
        let n = word.len();
        let (mut f, mut i) = (c as u32, 0usize);
        let (mut b, mut j) = (c as u32, n);
        loop {
            while i < j {
                let next = self.get(f as usize, word[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(Scan::Done);
            }
            while j > i {
                let next = self.get(b as usize, word[j - 1] ^ 1);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(Scan::Done);
            }
            if j == i + 1 {
                self.set(f as usize, word[i], b);
                self.set(b as usize, word[i] ^ 1, f);
                return Ok(Scan::Done);
            }
            if !self.define(f as usize, word[i])? {
                return Ok(Scan::Full);
            }
        }
    }

    /// Scan without defining; fills single gaps and processes coincidences.
    fn scan_only(&mut self, c: usize, word: &[usize]) {
        if word.is_empty() || !self.alive(c) {
            return;
        }
        let mut f = c as u32;
        let mut i = 0usize;
        let n = word.len();
        while i < n {
            let next = self.get(f as usize, word[i]);
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != c as u32 {
                self.coincidence(f, c as u32);
            }
            return;
        }
        let mut b = c as u32;
        let mut j = n;
        while j > i {
            let next = self.get(b as usize, word[j - 1] ^ 1);
            if next == NONE {
                break;
            }
            b = next;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.set(f as usize, word[i], b);
            self.set(b as usize, word[i] ^ 1, f);
        }
    }

    fn lookahead(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        let mut c = 0;
        while c < self.rows() {
            if self.alive(c) {
                for r in &relators {
                    self.scan_only(c, r);
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
        self.relators = relators;
    }

    /// Remove dead cosets preserving relative order. Returns the new index of
    /// the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let n = self.rows();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.alive(c) {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.width);
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            for col in 0..self.width {
                let d = self.get(c, col);
                table.push(if d == NONE { NONE } else { map[d as usize] });
            }
        }
        let new_cursor = (cursor..n)
            .find(|&c| map[c] != NONE)
            .map_or(next as usize, |c| map[c] as usize);
        self.table = table;
        self.forward = (0..next).collect();
        self.live = next as usize;
        new_cursor
    }

    /// Make room after `scan_and_fill` reported a full table.
    fn relieve(&mut self, cursor: usize) -> Result<usize, EnumerationError> {
        let before = self.rows();
        self.lookahead();
        let cursor = self.compact(cursor);
        if self.rows() >= before || self.rows() >= self.limits.max_cosets {
            return Err(EnumerationError::CosetLimit {
                limit: self.limits.max_cosets,
            });
        }
        Ok(cursor)
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerate the cosets of `⟨subgroup⟩` in the group presented by `p`.
///
/// On success the returned table is closed, compacted and audited; its coset
/// count is the index. Deterministic for identical inputs.
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    limits: EnumerationLimits,
) -> Result<CosetTable, EnumerationError> {
    if limits.max_cosets == 0 || limits.max_definitions == 0 {
        return Err(EnumerationError::InvalidLimits);
    }
    let ngens = p.num_generators();
    if subgroup
        .iter()
        .any(|w| w.max_generator().is_some_and(|g| g >= ngens))
    {
        return Err(EnumerationError::SubgroupOutOfRange);
    }
    let width = 2 * ngens;
    let mut e = Enumerator {
        width,
        table: vec![NONE; width],
        forward: vec![0],
        live: 1,
        definitions: 0,
        limits,
        relators: p.relators().iter().map(columns).collect(),
        queue: VecDeque::new(),
    };
    let subgroup_cols: Vec<Vec<usize>> = subgroup.iter().map(columns).collect();
    for h in &subgroup_cols {
        loop {
            match e.scan_and_fill(0, h)? {
                Scan::Done => break,
                Scan::Full => {
                    e.relieve(0)?;
                }
            }
        }
    }
    let mut c = 0;
    'cosets: while c < e.rows() {
        if e.alive(c) {
            let mut r = 0;
            while r < e.relators.len() {
                let rel = std::mem::take(&mut e.relators[r]);
                let scan = e.scan_and_fill(c, &rel);
                e.relators[r] = rel;
                match scan? {
                    Scan::Done => {
                        if !e.alive(c) {
                            c += 1;
                            continue 'cosets;
                        }
                        r += 1;
                    }
                    Scan::Full => {
                        c = e.relieve(c)?;
                        continue 'cosets;
                    }
                }
            }
            for col in 0..width {
                if !e.alive(c) {
                    break;
                }
                if e.get(c, col) == NONE && !e.define(c, col)? {
                    c = e.relieve(c)?;
                    continue 'cosets;
                }
            }
        }
        c += 1;
    }
    e.compact(0);
    let table = CosetTable {
        presentation: p.clone(),
        subgroup: subgroup.to_vec(),
        width,
        entries: e.table,
    };
    debug_assert!(table.audit().is_ok());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;

    fn pres(s: &str) -> Presentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn cyclic_five() {
        let t = enumerate(&pres("< a | a^5 >"), &[], EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 5);
        t.audit().unwrap();
    }

    #[test]
    fn whole_group_has_index_one() {
        let p = pres("< a, b | a^2, b^3, (a*b)^5 >");
        let t = enumerate(
            &p,
            &[Word::generator(0), Word::generator(1)],
            EnumerationLimits::default(),
        )
        .unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn trivial_presentation() {
        let t = enumerate(&Presentation::trivial(), &[], EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 1);
        assert!(t.is_closed());
    }

    #[test]
    fn coset_limit_is_inconclusive() {
        let p = pres("< a, b | a^2, b^3, (a*b)^5 >");
        let err = enumerate(&p, &[], EnumerationLimits::new(10, 1000).unwrap()).unwrap_err();
        assert_eq!(err, EnumerationError::CosetLimit { limit: 10 });
        assert!(err.is_limit());
    }

    #[test]
    fn definition_limit_is_distinct() {
        let p = pres("< a, b | a^2, b^3, (a*b)^5 >");
        let err = enumerate(&p, &[], EnumerationLimits::new(1000, 5).unwrap()).unwrap_err();
        assert_eq!(err, EnumerationError::DefinitionLimit { limit: 5 });
    }

    #[test]
    fn infinite_group_hits_limit() {
        let p = pres("< a, b | >");
        let err = enumerate(&p, &[], EnumerationLimits::new(100, 10_000).unwrap()).unwrap_err();
        assert!(err.is_limit());
    }

    #[test]
    fn invalid_limits() {
        assert_eq!(
            EnumerationLimits::new(0, 1),
            Err(EnumerationError::InvalidLimits)
        );
    }

    #[test]
    fn involution_permutation() {
        let t = enumerate(&pres("< a | a^2 >"), &[], EnumerationLimits::default()).unwrap();
        let perms = t.permutation_rep().unwrap();
        assert_eq!(perms[0].to_string(), "(1 2)");
    }

    #[test]
    fn open_table_rejected() {
        let p = pres("< a | a^2 >");
        let t = CosetTable::from_rows(p, vec![], &[vec![None, None]]).unwrap();
        assert_eq!(t.standardize(), Err(TableError::NotClosed));
        assert_eq!(t.permutation_rep().err(), Some(TableError::NotClosed));
        assert_eq!(t.audit(), Err(TableError::NotClosed));
    }

    #[test]
    fn inconsistent_rows_rejected() {
        let p = pres("< a | a^2 >");
        let err = CosetTable::from_rows(
            p,
            vec![],
            &[vec![Some(1), Some(1)], vec![Some(1), Some(0)]],
        )
        .unwrap_err();
        assert!(matches!(err, TableError::Inconsistent { .. }));
    }

    #[test]
    fn dump_has_header_and_rows() {
        let t = enumerate(&pres("< a | a^3 >"), &[], EnumerationLimits::default()).unwrap();
        let text = t.dump();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# presentation "));
        assert!(lines[0].ends_with("subgroup [] cosets 3"));
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "2 3");
    }
}
