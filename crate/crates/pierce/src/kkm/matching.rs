/// Maximum bipartite matching between `n` covers and `n` sets given an
/// adjacency matrix `adj[cover][set]`, by augmenting paths. Returns the
/// matched set per cover when a perfect matching exists.
pub fn perfect_matching(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut matched_to: Vec<Option<usize>> = vec![None; n]; // set -> cover
    for cover in 0..n {
        let mut used = vec![false; n];
        if !augment(adj, cover, &mut used, &mut matched_to) {
            return None;
        }
    }
    let mut result = vec![usize::MAX; n];
    for (set, cover) in matched_to.iter().enumerate() {
        result[(*cover)?] = set;
    }
    Some(result)
}

fn augment(adj: &[Vec<bool>], cover: usize, used: &mut [bool], matched_to: &mut [Option<usize>]) -> bool {
    for set in 0..adj.len() {
        if adj[cover][set] && !used[set] {
            used[set] = true;
            if matched_to[set].is_none() || augment(adj, matched_to[set].unwrap(), used, matched_to) {
                matched_to[set] = Some(cover);
                return true;
            }
        }
    }
    false
}

/// Brute-force oracle: tries all `n!` assignments. Only sensible for small
/// `n`; kept as the independent cross-check for [`perfect_matching`].
pub fn matching_exists_brute(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_any(&mut perm, 0, &mut |p| (0..n).all(|i| adj[i][p[i]]))
}

fn permute_any(perm: &mut Vec<usize>, at: usize, ok: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if at == perm.len() {
        return ok(perm);
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        if permute_any(perm, at + 1, ok) {
            perm.swap(at, i);
            return true;
        }
        perm.swap(at, i);
    }
    false
}
