use crate::error::Result;
use crate::group::{
    are_isomorphic, build_group, check_cap, fingerprint, order_cap, BinaryPolyhedral, FiniteGroup,
    GroupSpec,
};

/// Whether `a` is isomorphic to a finite subgroup of `SL(2, C)`: cyclic,
/// binary dihedral of order `4k`, or binary tetrahedral, octahedral or
/// icosahedral.
pub fn sl2_finite_subgroup_check(a: &FiniteGroup) -> Result<bool> {
    check_cap(a.order(), order_cap())?;
    if a.is_cyclic() {
        return Ok(true);
    }
    let involutions = a.element_orders().iter().filter(|&&o| o == 2).count();
    if involutions > 1 {
        return Ok(false);
    }
    let order = a.order();
    let mut candidates = Vec::new();
    if order.is_multiple_of(4) && order >= 8 {
        candidates.push(GroupSpec::Dicyclic(order / 4));
    }
    match order {
        24 => candidates.push(GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Tetrahedral)),
        48 => candidates.push(GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Octahedral)),
        120 => candidates.push(GroupSpec::BinaryPolyhedral(BinaryPolyhedral::Icosahedral)),
        _ => {}
    }
    let fp = fingerprint(a);
    for spec in candidates {
        let reference = build_group(&spec)?;
        if fingerprint(&reference) == fp && are_isomorphic(a, &reference) {
            return Ok(true);
        }
    }
    Ok(false)
}
