//! Exact indicator values where the characters involved are linear.

use serde::Serialize;

use super::{zeta_table, ZetaTable};
use crate::cyclotomic::CycNum;
use crate::error::{usage, Result};
use crate::group::{ElementId, Group};

/// `<Res_H zeta_n, lambda_j>_H` for `H = <g>` and
/// `lambda_j(g^k) = zeta_{o(g)}^{jk}`:
/// `(1/o(g)) sum_k zeta_n(g^k) zeta_{o(g)}^{-jk}`.
pub fn cyclic_restriction_indicator(grp: &Group, u: ElementId, g: ElementId, n: u64, j: u64) -> Result<CycNum> {
    grp.checked_inverse(g)?;
    grp.checked_inverse(u)?;
    if !grp.commutes(u, g) {
        return usage(format!("g = {g} is not in the centralizer of u = {u}"));
    }
    let table = zeta_table(grp, u, n)?;
    cyclic_restriction_from_table(grp, &table, g, j)
}

/// [`cyclic_restriction_indicator`] reusing a computed table.
pub fn cyclic_restriction_from_table(grp: &Group, table: &ZetaTable, g: ElementId, j: u64) -> Result<CycNum> {
    if !grp.commutes(table.u, g) {
        return usage(format!("g = {g} is not in the centralizer of u = {}", table.u));
    }
    let o = grp.element_order(g);
    let mut raw = vec![0i64; o as usize];
    let mut x = ElementId::IDENTITY;
    for k in 0..o {
        let slot = (o - (j % o) * k % o) % o;
        raw[slot as usize] += table.count(x) as i64;
        x = grp.mul(x, g);
    }
    CycNum::from_raw(o, &raw, o as i64)
}

/// `nu_n` of the simple `D(G)`-module labelled by `u` and a linear
/// character of an abelian `C(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterValue {
    /// Residues `j_i` with `eta(b_i) = zeta_{o(b_i)}^{j_i}` on the basis
    /// `b_i` of `C(u)` returned by [`Group::abelian_basis`].
    pub label: Vec<u32>,
    pub value: CycNum,
}

/// All `nu_n(chi_eta) = |C|^-1 sum_{g in C} |G_n(u, g)| eta(g)` for
/// `C = C(u)` abelian. Values live in `Q(zeta_E)`, `E` the exponent of `C`.
pub fn abelian_centralizer_indicators(grp: &Group, u: ElementId, n: u64) -> Result<Vec<CharacterValue>> {
    let members = grp.centralizer(&[u])?;
    let c = grp.as_group(&members)?;
    let basis = c.abelian_basis()?;
    let table = zeta_table(grp, u, n)?;
    let e = basis.exponent();
    let counts: Vec<(ElementId, i64)> =
        c.elements().map(|x| (x, table.count(c.embed(x).expect("member")) as i64)).filter(|&(_, k)| k != 0).collect();
    let size = c.order() as i64;
    basis
        .character_labels()
        .into_iter()
        .map(|label| {
            let mut raw = vec![0i64; e as usize];
            for &(x, k) in &counts {
                raw[basis.character_exponent(&label, x) as usize] += k;
            }
            Ok(CharacterValue { value: CycNum::from_raw(e, &raw, size)?, label })
        })
        .collect()
}
