//! Brute-force isomorphism testing over generator images.

use serde::Serialize;

use super::FiniteGroup;

/// Isomorphism invariants used for pruning and for classification lookups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// `(element order, count)` ascending.
    pub order_stats: Vec<(usize, usize)>,
    pub center_size: usize,
    pub derived_size: usize,
    pub class_count: usize,
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut counts = std::collections::BTreeMap::new();
    for o in g.element_orders() {
        *counts.entry(o).or_insert(0) += 1;
    }
    Fingerprint {
        order: g.order(),
        order_stats: counts.into_iter().collect(),
        center_size: g.center().len(),
        derived_size: g.derived_subgroup().len(),
        class_count: g.conjugacy_classes().len(),
    }
}

pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b, &[]).is_some()
}

/// Searches for an isomorphism `a -> b` that sends each `fixed.0` to
/// `fixed.1`. Returns the element map.
pub fn find_isomorphism(
    a: &FiniteGroup,
    b: &FiniteGroup,
    fixed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let orders_a = a.element_orders();
    let orders_b = b.element_orders();
    let cent_a = centralizer_sizes(a);
    let cent_b = centralizer_sizes(b);
    if sorted_pairs(&orders_a, &cent_a) != sorted_pairs(&orders_b, &cent_b) {
        return None;
    }
    if fixed
        .iter()
        .any(|&(x, y)| orders_a[x] != orders_b[y] || cent_a[x] != cent_b[y])
    {
        return None;
    }

    let mut gens: Vec<usize> = fixed.iter().map(|&(x, _)| x).collect();
    let mut span = a.generated_subgroup(&gens);
    let mut by_order: Vec<usize> = a.elements().collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(orders_a[x]), x));
    for x in by_order {
        if span.len() == a.order() {
            break;
        }
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = a.generated_subgroup(&gens);
        }
    }

    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &x)| match fixed.get(i) {
            Some(&(_, y)) => vec![y],
            None => b
                .elements()
                .filter(|&y| orders_b[y] == orders_a[x] && cent_b[y] == cent_a[x])
                .collect(),
        })
        .collect();

    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut images)
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        return extend(a, b, gens, images).filter(|map| is_bijective(map));
    }
    for &y in &candidates[depth] {
        images.push(y);
        if extend(a, b, &gens[..=depth], images).is_some_and(|m| injective_on_domain(&m)) {
            if let Some(found) = search(a, b, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends generator images to the generated subgroup, or `None` if the
/// assignment is not a well-defined homomorphism there.
fn extend(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    map[a.identity()] = b.identity();
    let mut queue = vec![a.identity()];
    while let Some(x) = queue.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let img = b.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

fn injective_on_domain(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    for &y in map.iter().filter(|&&y| y != usize::MAX) {
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

fn is_bijective(map: &[usize]) -> bool {
    map.iter().all(|&y| y != usize::MAX) && injective_on_domain(map)
}

fn centralizer_sizes(g: &FiniteGroup) -> Vec<usize> {
    g.elements()
        .map(|x| g.elements().filter(|&y| g.commutes(x, y)).count())
        .collect()
}

fn sorted_pairs(a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = a.iter().copied().zip(b.iter().copied()).collect();
    v.sort_unstable();
    v
}
