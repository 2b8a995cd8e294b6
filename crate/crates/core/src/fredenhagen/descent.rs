//! Descent data over the bounded slice: a module over every tuple
//! algebra and coherence isomorphisms along slice morphisms.

use std::sync::Arc;

use serde::Serialize;

use super::universal::{tuple_map, UniversalAlgebraResult};
use crate::algebra::{flatten, intertwiners, unflatten, PresentedModule, RightModule};
use crate::aqft::split_index;
use crate::exactlin::{Matrix, Rational, Subspace};
use crate::fincat::FinFunctor;
use crate::gauging::GaugedTheory;
use crate::grouprep::induced::coinduced;
use crate::grouprep::{EquivariantModule, FiniteGroup, GroupAction, Representation};
use crate::operad::{EnvelopeMorphism, Tuple};

/// `V_x` for every slice object and `ξ_u: V_y -> V_x` for every slice
/// morphism `u: x -> y`, `A_x`-linear from the restriction of `V_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentObject {
    pub modules: Vec<RightModule>,
    pub xi: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DescentError {
    #[error("expected {objects} modules and {morphisms} coherence maps, found {found_objects} and {found_morphisms}")]
    IndexMismatch {
        objects: usize,
        morphisms: usize,
        found_objects: usize,
        found_morphisms: usize,
    },
    #[error("the module violates rule {0} of the presentation")]
    NotAModule(usize),
    #[error("generator matrices do not match the presentation")]
    Shape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescentViolation {
    /// `V_x` is not a module over the tuple algebra.
    NotModule { object: usize },
    /// `ξ_u` has the wrong shape or is singular.
    NotInvertible { morphism: usize },
    /// `ξ_u` fails linearity on tuple basis element `basis`.
    NotLinear { morphism: usize, basis: usize },
    /// `ξ_{id_x} ≠ id`.
    Identity { object: usize },
    /// `ξ_{v∘u} ≠ ξ_u ∘ ξ_v` on the chain `u`, `v`.
    Composition { first: usize, second: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentReport {
    pub tuple_cap: usize,
    pub objects: usize,
    pub morphisms: usize,
    pub chains_checked: usize,
    pub violation: Option<DescentViolation>,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn descent_check(res: &UniversalAlgebraResult, x: &DescentObject) -> Result<DescentReport, DescentError> {
    let slice = &res.slice;
    let (n, k) = (slice.objects.len(), slice.morphisms.len());
    if x.modules.len() != n || x.xi.len() != k {
        return Err(DescentError::IndexMismatch {
            objects: n,
            morphisms: k,
            found_objects: x.modules.len(),
            found_morphisms: x.xi.len(),
        });
    }
    let mut report = DescentReport {
        tuple_cap: slice.cap,
        objects: n,
        morphisms: k,
        chains_checked: 0,
        violation: None,
    };
    report.violation = find_violation(res, x, &mut report.chains_checked);
    Ok(report)
}

fn find_violation(res: &UniversalAlgebraResult, x: &DescentObject, chains: &mut usize) -> Option<DescentViolation> {
    let slice = &res.slice;
    for (o, m) in x.modules.iter().enumerate() {
        if m.algebra.dim() != res.tuple_algebras[o].dim() || m.validate().is_err() {
            return Some(DescentViolation::NotModule { object: o });
        }
    }
    for (mi, sm) in slice.morphisms.iter().enumerate() {
        let (vx, vy) = (&x.modules[sm.source], &x.modules[sm.target]);
        let xi = &x.xi[mi];
        if xi.shape() != (vx.dim, vy.dim) || !xi.is_invertible() {
            return Some(DescentViolation::NotInvertible { morphism: mi });
        }
        let f = &res.tuple_maps[mi];
        for b in 0..f.cols() {
            if xi * &vy.action_matrix(&f.column(b)) != &vx.action[b] * xi {
                return Some(DescentViolation::NotLinear { morphism: mi, basis: b });
            }
        }
    }
    let cat = &slice.category;
    for o in cat.objects() {
        if !x.xi[cat.identity(o)].is_identity() {
            return Some(DescentViolation::Identity { object: o });
        }
    }
    for ((second, first), composite) in cat.composition_table() {
        *chains += 1;
        if x.xi[composite] != &x.xi[first] * &x.xi[second] {
            return Some(DescentViolation::Composition { first, second });
        }
    }
    None
}

/// Restrictions `χ_x^*(V)` with identity coherences.
pub fn module_to_descent(res: &UniversalAlgebraResult, v: &PresentedModule) -> Result<DescentObject, DescentError> {
    if v.generators.len() != res.algebra.generators().len() || v.generators.iter().any(|g| g.shape() != (v.dim, v.dim))
    {
        return Err(DescentError::Shape);
    }
    if let Some(rule) = v.violated_rule(&res.algebra) {
        return Err(DescentError::NotAModule(rule));
    }
    let slice = &res.slice;
    let modules = (0..slice.objects.len())
        .map(|x| {
            let tuple = &slice.objects[x].tuple;
            let slot_mats: Vec<Vec<Matrix>> = tuple
                .iter()
                .enumerate()
                .map(|(k, _)| {
                    let s = res.slots[x][k];
                    let dim = res.tuple_algebras[s].dim();
                    (0..dim).map(|i| v.element_matrix(&res.singleton_image(s, i))).collect()
                })
                .collect();
            let dims: Vec<usize> = slot_mats.iter().map(Vec::len).collect();
            let action = (0..res.tuple_algebras[x].dim())
                .map(|flat| {
                    // v·(a_1 ⊗ ... ⊗ a_n) = (...(v·a_1)...)·a_n
                    split_index(flat, &dims)
                        .iter()
                        .enumerate()
                        .fold(Matrix::identity(v.dim), |acc, (k, &i)| &slot_mats[k][i] * &acc)
                })
                .collect();
            RightModule {
                algebra: res.tuple_algebras[x].clone(),
                dim: v.dim,
                action,
            }
        })
        .collect();
    let xi = slice.morphisms.iter().map(|_| Matrix::identity(v.dim)).collect();
    Ok(DescentObject { modules, xi })
}

/// Families `Γ_x: V_x -> W_x` of module maps with `Γ_x ξ^V_u = ξ^W_u Γ_y`.
#[derive(Debug, Clone)]
pub struct DescentHom {
    pub space: Subspace,
    /// `(offset, rows, cols)` of every component in the flattened family.
    pub layout: Vec<(usize, usize, usize)>,
}

impl DescentHom {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn component(&self, family: &[Rational], x: usize) -> Matrix {
        let (off, r, c) = self.layout[x];
        unflatten(r, c, &family[off..off + r * c])
    }

    pub fn family(&self, components: &[Matrix]) -> Vec<Rational> {
        components.iter().flat_map(flatten).collect()
    }
}

pub fn descent_hom(res: &UniversalAlgebraResult, v: &DescentObject, w: &DescentObject) -> DescentHom {
    let slice = &res.slice;
    let mut layout = Vec::new();
    let mut total = 0;
    for x in 0..slice.objects.len() {
        let (r, c) = (w.modules[x].dim, v.modules[x].dim);
        layout.push((total, r, c));
        total += r * c;
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // Γ_x R^V(a) - R^W(a) Γ_x = 0
    for x in 0..slice.objects.len() {
        let (off, r, c) = layout[x];
        for (ra, rb) in v.modules[x].action.iter().zip(&w.modules[x].action) {
            for i in 0..r {
                for j in 0..c {
                    let mut row = vec![Rational::zero(); total];
                    for k in 0..c {
                        row[off + i * c + k] += ra.get(k, j);
                    }
                    for k in 0..r {
                        row[off + k * c + j] -= rb.get(i, k);
                    }
                    if row.iter().any(|e| !e.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    // Γ_x ξ^V_u - ξ^W_u Γ_y = 0 as maps V_y -> W_x
    for (mi, m) in slice.morphisms.iter().enumerate() {
        let (ox, rx, cx) = layout[m.source];
        let (oy, ry, cy) = layout[m.target];
        let (xv, xw) = (&v.xi[mi], &w.xi[mi]);
        for i in 0..rx {
            for j in 0..cy {
                let mut row = vec![Rational::zero(); total];
                for k in 0..cx {
                    row[ox + i * cx + k] += xv.get(k, j);
                }
                for k in 0..ry {
                    row[oy + k * cy + j] -= xw.get(i, k);
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(total)
    } else {
        Matrix::from_rows(total, rows).expect("row length").kernel()
    };
    DescentHom { space, layout }
}

/// Module maps between two modules over the presented algebra.
pub fn presented_hom(v: &PresentedModule, w: &PresentedModule) -> Subspace {
    let pairs: Vec<(&Matrix, &Matrix)> = v.generators.iter().zip(&w.generators).collect();
    intertwiners(v.dim, w.dim, &pairs)
}

/// `G^n` acting slot-wise on the tuple algebra of `tuple` (objects of the
/// gauged theory's site).
pub fn tuple_action(g: &GaugedTheory, tuple: &[usize]) -> Arc<GroupAction> {
    let base = &g.base;
    let group = Arc::new(FiniteGroup::power(&base.group, tuple.len()));
    let algebra = Arc::new(crate::algebra::tensor_all(
        tuple.iter().map(|&c| &*base.theory.algebras[c]),
    ));
    let orders = vec![base.group.order(); tuple.len()];
    let matrices = group
        .elements()
        .map(|e| {
            let gs = split_index(e, &orders);
            Matrix::kronecker_all(tuple.iter().zip(&gs).map(|(&c, &gk)| &base.actions[c].matrices[gk]))
        })
        .collect();
    Arc::new(GroupAction {
        group,
        algebra,
        matrices,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error("the module is not over the target tuple of the slice morphism")]
    WrongTarget,
}

/// The right adjoint transport along `u: x -> y` (an envelope morphism of
/// the source of `j`): restrict the module along the tuple algebra map
/// and coinduce the representation along
/// `Δ_α: G^{|y|} -> G^{|x|}, (g_1, ..., g_m) ↦ (g_α(1), ..., g_α(n))`.
pub fn factorization_right_adjoint(
    g: &GaugedTheory,
    j: &FinFunctor,
    u: &EnvelopeMorphism,
    v: &EquivariantModule,
) -> Result<EquivariantModule, TransportError> {
    let mapped = EnvelopeMorphism {
        source: u.source.iter().map(|&c| j.map_object(c)).collect::<Tuple>(),
        target: u.target.iter().map(|&c| j.map_object(c)).collect::<Tuple>(),
        alpha: u.alpha.clone(),
        components: u.components.iter().map(|&f| j.map_morphism(f)).collect(),
    };
    let act_x = tuple_action(g, &mapped.source);
    let act_y = tuple_action(g, &mapped.target);
    if v.module.algebra.dim() != act_y.algebra.dim() || v.rep.group.order() != act_y.group.order() {
        return Err(TransportError::WrongTarget);
    }
    let f = tuple_map(&g.base.theory, &mapped);
    let n = g.base.group.order();
    let (kx, ky) = (mapped.source.len(), mapped.target.len());
    let delta: Vec<usize> = act_y
        .group
        .elements()
        .map(|h| {
            let hs = split_index(h, &vec![n; ky]);
            let image: Vec<usize> = u.alpha.iter().map(|&a| hs[a]).collect();
            crate::aqft::join_index(&image, &vec![n; kx])
        })
        .collect();
    let coind = coinduced(&act_x.group, &delta, &v.rep);
    let d = v.dim();
    let incl = coind.inclusion();
    let k_order = act_x.group.order();
    let action = (0..act_x.algebra.dim())
        .map(|b| {
            let mut ambient = Matrix::zeros(k_order * d, k_order * d);
            for k in 0..k_order {
                let moved = act_x.matrices[k].column(b);
                let block = v.module.action_matrix(&f.apply(&moved));
                for r in 0..d {
                    for c in 0..d {
                        ambient.set(k * d + r, k * d + c, block.get(r, c).clone());
                    }
                }
            }
            coind.coordinates_of(&(&ambient * &incl))
        })
        .collect();
    let module = RightModule {
        algebra: act_x.algebra.clone(),
        dim: coind.rep.dim,
        action,
    };
    Ok(EquivariantModule {
        action: act_x,
        module,
        rep: Representation {
            group: coind.rep.group.clone(),
            dim: coind.rep.dim,
            matrices: coind.rep.matrices,
        },
    })
}
