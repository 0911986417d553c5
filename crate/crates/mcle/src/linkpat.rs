//! Planar (noncrossing) link patterns on `2N` boundary points.
//!
//! A link pattern is a perfect pairing `{ {a_1,b_1}, ..., {a_N,b_N} }` of
//! `{1, ..., 2N}` such that no two pairs interleave as `a_r < a_s < b_r < b_s`.
//! Patterns come in two roles: *interior* patterns pair points through the
//! domain, *exterior* patterns pair them through its complement. Indices are
//! 1-based; pairs are stored as `(a, b)` with `a < b`, sorted by first
//! element, so pattern equality is plain list equality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether the links run through the domain or through its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Interior,
    Exterior,
}

/// A noncrossing perfect pairing of `{1..2N}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkPattern {
    pairs: Vec<(usize, usize)>,
    role: Role,
}

impl LinkPattern {
    /// Builds a pattern from arbitrary pairs, validating the partition and
    /// noncrossing invariants and normalizing the storage order.
    pub fn new(pairs: Vec<(usize, usize)>, role: Role) -> Result<Self> {
        let n2 = 2 * pairs.len();
        let mut norm: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        norm.sort_unstable();
        check_partition(&norm, n2)?;
        if !is_noncrossing_unchecked(&norm) {
            return Err(Error::MalformedPairing(format!(
                "pairs {norm:?} contain a crossing"
            )));
        }
        Ok(LinkPattern { pairs: norm, role })
    }

    /// Number of links `N`.
    pub fn n_links(&self) -> usize {
        self.pairs.len()
    }

    /// Number of endpoints `2N`.
    pub fn n_points(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// The normalized pair list, sorted by first element.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Returns the partner of endpoint `i` (1-based).
    pub fn partner(&self, i: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == i {
                return b;
            }
            if b == i {
                return a;
            }
        }
        panic!("endpoint {i} out of range for pattern with {} points", self.n_points());
    }

    /// Same pairs, other role.
    pub fn with_role(&self, role: Role) -> LinkPattern {
        LinkPattern { pairs: self.pairs.clone(), role }
    }

    /// Serializes as a JSON array of pairs, e.g. `[[1,2],[3,4]]`.
    pub fn to_json(&self) -> String {
        let arr: Vec<[usize; 2]> = self.pairs.iter().map(|&(a, b)| [a, b]).collect();
        serde_json::to_string(&arr).expect("pairs serialize")
    }

    /// Parses the `[[a,b],...]` form produced by [`LinkPattern::to_json`].
    pub fn from_json(s: &str, role: Role) -> Result<Self> {
        let arr: Vec<[usize; 2]> = serde_json::from_str(s)
            .map_err(|e| Error::MalformedPairing(format!("bad pattern JSON: {e}")))?;
        LinkPattern::new(arr.into_iter().map(|[a, b]| (a, b)).collect(), role)
    }
}

impl std::fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// The bichordal exterior pattern `{{1,2},{3,4}}` (two "cups").
pub fn beta_cups() -> LinkPattern {
    LinkPattern::new(vec![(1, 2), (3, 4)], Role::Exterior).unwrap()
}

/// The bichordal exterior pattern `{{1,4},{2,3}}` (nested).
pub fn beta_nested() -> LinkPattern {
    LinkPattern::new(vec![(1, 4), (2, 3)], Role::Exterior).unwrap()
}

/// The bichordal interior pattern `{{1,2},{3,4}}`.
pub fn alpha_cups() -> LinkPattern {
    LinkPattern::new(vec![(1, 2), (3, 4)], Role::Interior).unwrap()
}

/// The bichordal interior pattern `{{1,4},{2,3}}`.
pub fn alpha_nested() -> LinkPattern {
    LinkPattern::new(vec![(1, 4), (2, 3)], Role::Interior).unwrap()
}

fn check_partition(pairs: &[(usize, usize)], n2: usize) -> Result<()> {
    let mut seen = vec![false; n2 + 1];
    for &(a, b) in pairs {
        if a == b || a == 0 || b == 0 || a > n2 || b > n2 {
            return Err(Error::MalformedPairing(format!(
                "pair ({a},{b}) outside 1..{n2}"
            )));
        }
        for i in [a, b] {
            if seen[i] {
                return Err(Error::MalformedPairing(format!("endpoint {i} repeated")));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

fn is_noncrossing_unchecked(pairs: &[(usize, usize)]) -> bool {
    for (k, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[k + 1..] {
            // With a < b, c < d, links cross iff exactly one of c, d lies
            // strictly inside (a, b).
            let c_in = a < c && c < b;
            let d_in = a < d && d < b;
            if c_in != d_in {
                return false;
            }
        }
    }
    true
}

/// Tests whether `pairs` is a noncrossing perfect pairing of `{1..n2}`.
///
/// Errors if the pairs do not partition `{1..n2}`.
pub fn is_noncrossing(pairs: &[(usize, usize)], n2: usize) -> Result<bool> {
    if 2 * pairs.len() != n2 {
        return Err(Error::MalformedPairing(format!(
            "{} pairs cannot partition {} points",
            pairs.len(),
            n2
        )));
    }
    let norm: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| if a <= b { (a, b) } else { (b, a) })
        .collect();
    check_partition(&norm, n2)?;
    Ok(is_noncrossing_unchecked(&norm))
}

/// Maximum `N` accepted by [`enumerate_patterns`]; Catalan(12) = 208012.
pub const MAX_ENUMERATION_N: usize = 12;

/// Enumerates all noncrossing pairings of `{1..2N}` in lexicographic order of
/// their normalized pair lists. The count is the N-th Catalan number.
pub fn enumerate_patterns(n: usize, role: Role) -> Result<Vec<LinkPattern>> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::SizeLimit(format!(
            "pattern enumeration supports 1 <= N <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut open: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; 2 * n + 1];
    enumerate_rec(2 * n, &mut used, &mut open, &mut out, role);
    Ok(out)
}

fn enumerate_rec(
    n2: usize,
    used: &mut Vec<bool>,
    acc: &mut Vec<(usize, usize)>,
    out: &mut Vec<LinkPattern>,
    role: Role,
) {
    // Smallest unused endpoint; pairing it with each admissible partner in
    // increasing order yields lexicographic order of the sorted pair lists.
    let a = match (1..=n2).find(|&i| !used[i]) {
        Some(a) => a,
        None => {
            out.push(LinkPattern { pairs: acc.clone(), role });
            return;
        }
    };
    used[a] = true;
    for b in a + 1..=n2 {
        if used[b] {
            continue;
        }
        // The arc (a, b) must enclose an even number of unused points and
        // must not cross an already-placed arc (placed arcs all start below
        // `a`, so a crossing means exactly their second endpoint falls
        // inside (a, b)).
        let inside = (a + 1..b).filter(|&i| !used[i]).count();
        if inside % 2 != 0 {
            continue;
        }
        if acc.iter().any(|&(_, d)| a < d && d < b) {
            continue;
        }
        used[b] = true;
        acc.push((a, b));
        enumerate_rec(n2, used, acc, out, role);
        acc.pop();
        used[b] = false;
    }
    used[a] = false;
}

/// Shifts all endpoint labels by `k` modulo `2N` and re-normalizes.
///
/// Noncrossing is preserved: rotation is a cyclic symmetry of the circle.
pub fn rotate_pattern(p: &LinkPattern, k: i64) -> LinkPattern {
    let n2 = p.n_points() as i64;
    let shift = |i: usize| -> usize { ((i as i64 - 1 + k).rem_euclid(n2) + 1) as usize };
    let pairs: Vec<(usize, usize)> = p.pairs.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
    LinkPattern::new(pairs, p.role).expect("rotation preserves noncrossing")
}

/// Contracts explored connections through an exterior pattern.
///
/// `connected` lists marked-point pairs that have been joined by explored
/// strands. Viewing the exterior links and the connections as a graph on
/// `{1..2N}` in which every point carries exactly one exterior edge and at
/// most one connection edge, the components are paths and cycles. Cycles are
/// closed-off loops and disappear; each path pairs its two free endpoints.
/// The surviving endpoints are relabeled `1..2M` in increasing original
/// order, which preserves the circular order, so the result is noncrossing.
pub fn induced_pattern(exterior: &LinkPattern, connected: &[(usize, usize)]) -> Result<LinkPattern> {
    let n2 = exterior.n_points();
    let mut conn = vec![0usize; n2 + 1]; // 0 = no connection
    for &(a, b) in connected {
        if a == 0 || b == 0 || a > n2 || b > n2 || a == b {
            return Err(Error::Induction(format!(
                "connection ({a},{b}) outside 1..{n2}"
            )));
        }
        if conn[a] != 0 || conn[b] != 0 {
            return Err(Error::Induction(format!(
                "connection ({a},{b}) touches an already-connected endpoint"
            )));
        }
        conn[a] = b;
        conn[b] = a;
    }

    let free: Vec<usize> = (1..=n2).filter(|&i| conn[i] == 0).collect();
    if free.is_empty() {
        // Everything closed into loops: the empty pattern on zero points is
        // not representable, treat as an induction error.
        return Err(Error::Induction(
            "contraction closed all points into loops".into(),
        ));
    }

    let mut relabel = vec![0usize; n2 + 1];
    for (new, &old) in free.iter().enumerate() {
        relabel[old] = new + 1;
    }

    let mut visited = vec![false; n2 + 1];
    let mut pairs = Vec::with_capacity(free.len() / 2);
    for &start in &free {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        // Walk ext, conn, ext, conn, ... until the next free endpoint.
        let mut cur = exterior.partner(start);
        loop {
            if visited[cur] {
                return Err(Error::Induction(format!(
                    "walk from {start} revisited endpoint {cur}"
                )));
            }
            visited[cur] = true;
            if conn[cur] == 0 {
                break;
            }
            let hop = conn[cur];
            if visited[hop] {
                return Err(Error::Induction(format!(
                    "walk from {start} revisited endpoint {hop}"
                )));
            }
            visited[hop] = true;
            cur = exterior.partner(hop);
        }
        pairs.push((relabel[start], relabel[cur]));
    }

    if 2 * pairs.len() != free.len() {
        return Err(Error::Induction(format!(
            "{} free endpoints paired into {} links",
            free.len(),
            pairs.len()
        )));
    }

    LinkPattern::new(pairs, exterior.role)
        .map_err(|e| Error::Induction(format!("induced pairing crosses: {e}")))
}

/// Canonical unit-disc representation of a marked domain: sorted boundary
/// angles of the marked prime ends plus the exterior link pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedDomainRep {
    angles: Vec<f64>,
    exterior: LinkPattern,
}

impl MarkedDomainRep {
    /// `angles` must be strictly increasing in `[0, 2*pi)` (counterclockwise)
    /// and as many as the exterior pattern has endpoints.
    pub fn new(angles: Vec<f64>, exterior: LinkPattern) -> Result<Self> {
        if exterior.role() != Role::Exterior {
            return Err(Error::Domain("marked domain pattern must be exterior".into()));
        }
        if angles.len() != exterior.n_points() {
            return Err(Error::Domain(format!(
                "{} angles for a pattern on {} points",
                angles.len(),
                exterior.n_points()
            )));
        }
        let tau = std::f64::consts::TAU;
        for w in angles.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::Domain(format!(
                    "angles must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if let (Some(first), Some(last)) = (angles.first(), angles.last()) {
            if *first < 0.0 || *last >= tau {
                return Err(Error::Domain("angles must lie in [0, 2*pi)".into()));
            }
        }
        Ok(MarkedDomainRep { angles, exterior })
    }

    /// Equally spaced marked points starting at angle `offset`.
    pub fn equally_spaced(n_links: usize, offset: f64, exterior: LinkPattern) -> Result<Self> {
        let tau = std::f64::consts::TAU;
        let n2 = 2 * n_links;
        let mut angles: Vec<f64> = (0..n2)
            .map(|k| (offset + tau * k as f64 / n2 as f64).rem_euclid(tau))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        MarkedDomainRep::new(angles, exterior)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn exterior(&self) -> &LinkPattern {
        &self.exterior
    }

    pub fn n_links(&self) -> usize {
        self.exterior.n_links()
    }

    /// Marked point `i` (1-based) as a point of the unit circle.
    pub fn point(&self, i: usize) -> num_complex::Complex64 {
        let th = self.angles[i - 1];
        num_complex::Complex64::new(th.cos(), th.sin())
    }
}
