//! Finite base categories with explicitly chosen finite products,
//! coproducts, terminal/initial objects and exponentials.
//!
//! Two instances are provided: [`FinSet`], the skeletal category of finite
//! sets whose objects are cardinalities, and [`GeneralFinCat`], an
//! explicitly tabulated finite category loaded from JSON.

mod finset;
mod general;

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use finset::{Arrow, FinSet, DEFAULT_BUDGET};
pub use general::{CategoryFile, GeneralFinCat, Morphism};

/// Object identifier. In [`FinSet`] the id is the cardinality of the carrier
/// `{0, .., n-1}`; in a [`GeneralFinCat`] it indexes the object list.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(pub usize);

/// Which pieces of chosen structure a category provides.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CatCaps {
    pub products: bool,
    pub coproducts: bool,
    pub terminal: bool,
    pub initial: bool,
    pub exponentials: bool,
    /// An arrow `1 -> C` for every non-initial object `C`.
    pub points: bool,
}

impl CatCaps {
    pub fn all() -> Self {
        CatCaps {
            products: true,
            coproducts: true,
            terminal: true,
            initial: true,
            exponentials: true,
            points: true,
        }
    }

    pub fn distributive(&self) -> bool {
        self.products && self.coproducts && self.terminal && self.initial
    }
}

/// A finite category with chosen structure. Composition is written
/// `compose(g, f) = g ∘ f`.
///
/// Required methods cover the primitive data; products of arrows,
/// symmetries, associators, unitors and the distributivity isomorphism are
/// derived from them and may be overridden for speed.
pub trait FiniteCategory {
    type Arrow: Clone + Eq + Hash + Ord + Debug;

    fn has_object(&self, a: ObjId) -> bool;
    /// Objects considered "small" for exhaustive checks. For finite sets these
    /// are the cardinalities `0..=bound`; a tabulated category returns every
    /// object.
    fn objects_up_to(&self, bound: usize) -> Vec<ObjId>;
    fn object_name(&self, a: ObjId) -> String;
    fn lookup_object(&self, name: &str) -> Result<ObjId>;
    fn arrow_to_json(&self, f: &Self::Arrow) -> Value;
    fn arrow_from_json(&self, v: &Value) -> Result<Self::Arrow>;
    /// Maximum number of candidate arrows enumerated per hom-set.
    fn budget(&self) -> u64;

    fn dom(&self, f: &Self::Arrow) -> ObjId;
    fn cod(&self, f: &Self::Arrow) -> ObjId;
    fn identity(&self, a: ObjId) -> Self::Arrow;
    fn compose(&self, g: &Self::Arrow, f: &Self::Arrow) -> Result<Self::Arrow>;

    /// `|Hom(a, b)|`, or `None` if it does not fit in a `u128`.
    fn hom_size(&self, a: ObjId, b: ObjId) -> Option<u128>;
    /// Lazily enumerates `Hom(a, b)` in canonical order. Fails with
    /// `SearchBudgetExceeded` when the hom-set is larger than the budget.
    fn hom_iter(&self, a: ObjId, b: ObjId) -> Result<Box<dyn Iterator<Item = Self::Arrow> + '_>>;

    fn enumerate_hom(&self, a: ObjId, b: ObjId) -> Result<Vec<Self::Arrow>> {
        Ok(self.hom_iter(a, b)?.collect())
    }

    fn caps(&self) -> CatCaps;

    fn product(&self, a: ObjId, b: ObjId) -> Result<ObjId>;
    fn pr1(&self, a: ObjId, b: ObjId) -> Result<Self::Arrow>;
    fn pr2(&self, a: ObjId, b: ObjId) -> Result<Self::Arrow>;
    fn pair(&self, f: &Self::Arrow, g: &Self::Arrow) -> Result<Self::Arrow>;

    fn terminal(&self) -> Result<ObjId>;
    fn bang(&self, a: ObjId) -> Result<Self::Arrow>;
    fn initial(&self) -> Result<ObjId>;
    fn from_initial(&self, a: ObjId) -> Result<Self::Arrow>;

    fn coproduct(&self, a: ObjId, b: ObjId) -> Result<ObjId>;
    fn inj1(&self, a: ObjId, b: ObjId) -> Result<Self::Arrow>;
    fn inj2(&self, a: ObjId, b: ObjId) -> Result<Self::Arrow>;
    fn copair(&self, f: &Self::Arrow, g: &Self::Arrow) -> Result<Self::Arrow>;

    /// The exponential `B^A`.
    fn exponential(&self, b: ObjId, a: ObjId) -> Result<ObjId>;
    /// Evaluation `A × B^A -> B`.
    fn eval(&self, b: ObjId, a: ObjId) -> Result<Self::Arrow>;

    /// A chosen point `1 -> a`; `None` when `a` has no points.
    fn point(&self, a: ObjId) -> Result<Option<Self::Arrow>>;

    /// Curries `f: X × A -> B` into `X -> B^A`.
    fn transpose(&self, x: ObjId, a: ObjId, f: &Self::Arrow) -> Result<Self::Arrow> {
        let b = self.cod(f);
        let exp = self.exponential(b, a)?;
        let mut found = None;
        for h in self.hom_iter(x, exp)? {
            if &self.untranspose(x, a, b, &h)? == f {
                if found.is_some() {
                    return Err(Error::NonUniqueMediatingArrow(format!(
                        "exponential transpose into {}",
                        self.object_name(exp)
                    )));
                }
                found = Some(h);
            }
        }
        found.ok_or_else(|| {
            Error::NoMediatingArrow(format!("exponential transpose into {}", self.object_name(exp)))
        })
    }

    /// Uncurries `h: X -> B^A` into `X × A -> B`, i.e. `ev ∘ (1_A × h) ∘ swap`.
    fn untranspose(&self, x: ObjId, a: ObjId, b: ObjId, h: &Self::Arrow) -> Result<Self::Arrow> {
        if self.dom(h) != x || self.cod(h) != self.exponential(b, a)? {
            return Err(Error::ObjectMismatch {
                expected: format!("arrow {} -> {}^{}", self.object_name(x), self.object_name(b), self.object_name(a)),
                found: format!("{h:?}"),
            });
        }
        let ev = self.eval(b, a)?;
        let id_a = self.identity(a);
        let lifted = self.product_map(&id_a, h)?;
        let sw = self.swap(x, a)?;
        self.compose(&ev, &self.compose(&lifted, &sw)?)
    }

    fn product_map(&self, f: &Self::Arrow, g: &Self::Arrow) -> Result<Self::Arrow> {
        let (a, b) = (self.dom(f), self.dom(g));
        let left = self.compose(f, &self.pr1(a, b)?)?;
        let right = self.compose(g, &self.pr2(a, b)?)?;
        self.pair(&left, &right)
    }

    fn coproduct_map(&self, f: &Self::Arrow, g: &Self::Arrow) -> Result<Self::Arrow> {
        let (c, d) = (self.cod(f), self.cod(g));
        let left = self.compose(&self.inj1(c, d)?, f)?;
        let right = self.compose(&self.inj2(c, d)?, g)?;
        self.copair(&left, &right)
    }

    /// `A × B -> B × A`.
    fn swap(&self, a: ObjId, b: ObjId) -> Result<Self::Arrow> {
        self.pair(&self.pr2(a, b)?, &self.pr1(a, b)?)
    }

    /// `A + B -> B + A`.
    fn coproduct_swap(&self, a: ObjId, b: ObjId) -> Result<Self::Arrow> {
        self.copair(&self.inj2(b, a)?, &self.inj1(b, a)?)
    }

    /// `(A × B) × C -> A × (B × C)`.
    fn assoc(&self, a: ObjId, b: ObjId, c: ObjId) -> Result<Self::Arrow> {
        let ab = self.product(a, b)?;
        let p_ab = self.pr1(ab, c)?;
        let p_c = self.pr2(ab, c)?;
        let p_a = self.compose(&self.pr1(a, b)?, &p_ab)?;
        let p_b = self.compose(&self.pr2(a, b)?, &p_ab)?;
        let bc = self.pair(&p_b, &p_c)?;
        self.pair(&p_a, &bc)
    }

    /// `A × (B × C) -> (A × B) × C`.
    fn assoc_inv(&self, a: ObjId, b: ObjId, c: ObjId) -> Result<Self::Arrow> {
        let bc = self.product(b, c)?;
        let p_a = self.pr1(a, bc)?;
        let p_bc = self.pr2(a, bc)?;
        let p_b = self.compose(&self.pr1(b, c)?, &p_bc)?;
        let p_c = self.compose(&self.pr2(b, c)?, &p_bc)?;
        let ab = self.pair(&p_a, &p_b)?;
        self.pair(&ab, &p_c)
    }

    /// `A -> A × 1`.
    fn unit_right(&self, a: ObjId) -> Result<Self::Arrow> {
        self.pair(&self.identity(a), &self.bang(a)?)
    }

    /// `A -> 1 × A`.
    fn unit_left(&self, a: ObjId) -> Result<Self::Arrow> {
        self.pair(&self.bang(a)?, &self.identity(a))
    }

    /// The canonical distributivity arrow `(A×B)+(A×C) -> A×(B+C)`,
    /// `[⟨pr_A, j_B pr_B⟩, ⟨pr_A, j_C pr_C⟩]`.
    fn theta(&self, a: ObjId, b: ObjId, c: ObjId) -> Result<Self::Arrow> {
        let left = self.pair(
            &self.pr1(a, b)?,
            &self.compose(&self.inj1(b, c)?, &self.pr2(a, b)?)?,
        )?;
        let right = self.pair(
            &self.pr1(a, c)?,
            &self.compose(&self.inj2(b, c)?, &self.pr2(a, c)?)?,
        )?;
        self.copair(&left, &right)
    }

    fn theta_inv(&self, a: ObjId, b: ObjId, c: ObjId) -> Result<Self::Arrow> {
        self.inverse(&self.theta(a, b, c)?)
    }

    /// Distributivity on the other side, `(A×D)+(B×D) -> (A+B)×D`.
    fn theta_right(&self, a: ObjId, b: ObjId, d: ObjId) -> Result<Self::Arrow> {
        let ab = self.coproduct(a, b)?;
        let sw_out = self.swap(d, ab)?;
        let th = self.theta(d, a, b)?;
        let sw_in = self.coproduct_map(&self.swap(a, d)?, &self.swap(b, d)?)?;
        self.compose(&sw_out, &self.compose(&th, &sw_in)?)
    }

    fn theta_right_inv(&self, a: ObjId, b: ObjId, d: ObjId) -> Result<Self::Arrow> {
        let ab = self.coproduct(a, b)?;
        let sw_in = self.swap(ab, d)?;
        let th_inv = self.theta_inv(d, a, b)?;
        let sw_out = self.coproduct_map(&self.swap(d, a)?, &self.swap(d, b)?)?;
        self.compose(&sw_out, &self.compose(&th_inv, &sw_in)?)
    }

    /// Two-sided inverse, found by enumerating the reverse hom-set.
    fn inverse(&self, f: &Self::Arrow) -> Result<Self::Arrow> {
        let (a, b) = (self.dom(f), self.cod(f));
        let (id_a, id_b) = (self.identity(a), self.identity(b));
        for g in self.hom_iter(b, a)? {
            if self.compose(&g, f)? == id_a && self.compose(f, &g)? == id_b {
                return Ok(g);
            }
        }
        Err(Error::InvalidArrow(format!("{f:?} is not an isomorphism")))
    }

    /// `f^{-1}`-free check used by verifiers: is `a` the chosen initial object?
    fn is_initial(&self, a: ObjId) -> bool {
        self.initial().map(|i| i == a).unwrap_or(false)
    }
}

/// Checks `(h∘g)∘f = h∘(g∘f)` and the unit laws over every composable triple
/// of objects drawn from `objects`.
pub fn check_category_laws<C: FiniteCategory>(cat: &C, objects: &[ObjId]) -> Result<()> {
    for &x in objects {
        for &y in objects {
            for f in cat.hom_iter(x, y)? {
                if cat.compose(&cat.identity(y), &f)? != f || cat.compose(&f, &cat.identity(x))? != f {
                    return Err(Error::law(
                        "identity",
                        format!("unit law fails for {}", cat.arrow_to_json(&f)),
                    ));
                }
                for &z in objects {
                    for g in cat.hom_iter(y, z)? {
                        let gf = cat.compose(&g, &f)?;
                        for &w in objects {
                            for h in cat.hom_iter(z, w)? {
                                let left = cat.compose(&cat.compose(&h, &g)?, &f)?;
                                let right = cat.compose(&h, &gf)?;
                                if left != right {
                                    return Err(Error::law(
                                        "associativity",
                                        format!(
                                            "(h∘g)∘f != h∘(g∘f) for f={}, g={}, h={}",
                                            cat.arrow_to_json(&f),
                                            cat.arrow_to_json(&g),
                                            cat.arrow_to_json(&h)
                                        ),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
