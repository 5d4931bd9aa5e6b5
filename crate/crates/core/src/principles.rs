//! Choice principles read off the completions: the Rule of Choice, the
//! Counterexample Property and Skolemization.

use crate::completion::{Completion, Polarity, QuantElem, Witness};
use crate::doctrine::Doctrine;
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, ObjId};

type Arrow<D> = <<D as Doctrine>::Cat as FiniteCategory>::Arrow;

/// A witness `f: A -> B` with `⊤_A ≤ P_{⟨id, f⟩}(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceCertificate<A> {
    pub witness: A,
    pub validated: bool,
}

/// A counterexample `g: A -> B` with `P_{⟨id, g⟩}(α) ≤ ⊥_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleCertificate<A> {
    pub counterexample: A,
    pub validated: bool,
}

fn require<D: Doctrine>(c: &Completion<D>, polarity: Polarity, x: &QuantElem<D::Pred>) -> Result<()> {
    if c.polarity() != polarity || x.polarity != polarity {
        return Err(Error::ShapeMismatch(format!("expected an element of the {polarity:?} completion")));
    }
    Ok(())
}

/// `P_{⟨id_A, h⟩}(α)` for `x = (A, B, α)` and `h: A -> B`.
fn instantiate<D: Doctrine>(d: &D, x: &QuantElem<D::Pred>, h: &Arrow<D>) -> Result<D::Pred> {
    let c = d.base();
    let graph = c.pair(&c.identity(x.base), h)?;
    d.reindex(&graph, &x.pred)
}

/// From `⊤ ≤ (A, B, α)` in the existential completion, the arrow
/// `f: A -> B` with `⊤ ≤ α(a, f(a))`. `None` when `⊤ ≰ x`.
pub fn extract_choice<D: Doctrine>(c: &Completion<D>, x: &QuantElem<D::Pred>) -> Result<Option<ChoiceCertificate<Arrow<D>>>> {
    require(c, Polarity::Ex, x)?;
    let d = c.inner();
    if !d.caps().meets {
        return Err(Error::missing("finite meets in the base fibers"));
    }
    let top = c.top_q(x.base)?;
    let Some(Witness { arrow, .. }) = c.leq_witness(&top, x)? else {
        return Ok(None);
    };
    let cat = d.base();
    let witness = cat.compose(&arrow, &cat.unit_right(x.base)?)?;
    let validated = d.leq(x.base, &d.top(x.base)?, &instantiate(d, x, &witness)?)?;
    if !validated {
        return Err(Error::law("rule of choice", format!("extracted witness {witness:?} does not validate")));
    }
    Ok(Some(ChoiceCertificate { witness, validated }))
}

/// From `(A, B, α) ≤ ⊥` in the universal completion, the arrow
/// `g: A -> B` with `α(a, g(a)) ≤ ⊥`. `None` when `x ≰ ⊥`.
pub fn extract_counterexample<D: Doctrine>(
    c: &Completion<D>,
    x: &QuantElem<D::Pred>,
) -> Result<Option<CounterexampleCertificate<Arrow<D>>>> {
    require(c, Polarity::Un, x)?;
    let d = c.inner();
    if !d.caps().joins {
        return Err(Error::missing("finite joins in the base fibers"));
    }
    let bottom = c.bottom_q(x.base)?;
    let Some(Witness { arrow, .. }) = c.leq_witness(x, &bottom)? else {
        return Ok(None);
    };
    let cat = d.base();
    let counterexample = cat.compose(&arrow, &cat.unit_right(x.base)?)?;
    let validated = d.leq(x.base, &instantiate(d, x, &counterexample)?, &d.bottom(x.base)?)?;
    if !validated {
        return Err(Error::law(
            "counterexample property",
            format!("extracted counterexample {counterexample:?} does not validate"),
        ));
    }
    Ok(Some(CounterexampleCertificate { counterexample, validated }))
}

/// Both sides of `∀a2 ∃b α(a1,a2,b) = ∃f ∀a2 α(a1,a2,f(a2))`, computed in the
/// existential completion, with the order certificates between them.
#[derive(Clone, Debug)]
pub struct SkolemReport<P, A> {
    pub lhs: QuantElem<P>,
    pub rhs: QuantElem<P>,
    pub lhs_le_rhs: Option<A>,
    pub rhs_le_lhs: Option<A>,
}

impl<P, A> SkolemReport<P, A> {
    pub fn equal(&self) -> bool {
        self.lhs_le_rhs.is_some() && self.rhs_le_lhs.is_some()
    }
}

/// `α` is a predicate on `(A1×A2)×B`.
pub fn skolem_sides<D: Doctrine>(
    c: &Completion<D>,
    a1: ObjId,
    a2: ObjId,
    b: ObjId,
    alpha: &D::Pred,
) -> Result<(QuantElem<D::Pred>, QuantElem<D::Pred>)> {
    if c.polarity() != Polarity::Ex {
        return Err(Error::ShapeMismatch("Skolemization is computed in the existential completion".into()));
    }
    let d = c.inner();
    let cat = d.base();
    if !d.caps().forall_pr {
        return Err(Error::missing("universal quantifier in the base doctrine"));
    }
    let a12 = cat.product(a1, a2)?;
    let a12b = cat.product(a12, b)?;
    if !d.contains(a12b, alpha) {
        return Err(Error::InvalidPredicate(format!("{alpha:?} is not a predicate on (A1×A2)×B")));
    }

    let lhs = c.forall_pr_exp(a1, a2, &c.exists_pr_q(a12, b, &c.unit_q(a12b, alpha)?)?)?;

    let e = cat.exponential(b, a2)?;
    let m_obj = cat.product(a12, e)?;
    // ((a1,a2),e) ↦ ((a1,a2), ev(a2,e))
    let p12 = cat.pr1(a12, e)?;
    let pe = cat.pr2(a12, e)?;
    let p2 = cat.compose(&cat.pr2(a1, a2)?, &p12)?;
    let applied = cat.compose(&cat.eval(b, a2)?, &cat.pair(&p2, &pe)?)?;
    let m = cat.pair(&p12, &applied)?;
    let beta = d.reindex(&m, alpha)?;
    // σ: ((a1,e),a2) ↦ ((a1,a2),e)
    let a1e = cat.product(a1, e)?;
    let q1 = cat.pr1(a1e, a2)?;
    let q2 = cat.pr2(a1e, a2)?;
    let to_a1 = cat.compose(&cat.pr1(a1, e)?, &q1)?;
    let to_e = cat.compose(&cat.pr2(a1, e)?, &q1)?;
    let sigma = cat.pair(&cat.pair(&to_a1, &q2)?, &to_e)?;
    let moved = c.reindex_q(&sigma, &c.unit_q(m_obj, &beta)?)?;
    let rhs = c.exists_pr_q(a1, e, &c.forall_pr_exp(a1e, a2, &moved)?)?;
    Ok((lhs, rhs))
}

pub fn skolem_check<D: Doctrine>(
    c: &Completion<D>,
    a1: ObjId,
    a2: ObjId,
    b: ObjId,
    alpha: &D::Pred,
) -> Result<SkolemReport<D::Pred, Arrow<D>>> {
    let (lhs, rhs) = skolem_sides(c, a1, a2, b, alpha)?;
    let lhs_le_rhs = c.leq_witness(&lhs, &rhs)?.map(|w| w.arrow);
    let rhs_le_lhs = c.leq_witness(&rhs, &lhs)?.map(|w| w.arrow);
    Ok(SkolemReport {
        lhs,
        rhs,
        lhs_le_rhs,
        rhs_le_lhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doctrine::{PowersetDoctrine, Subset};

    fn ex() -> Completion<PowersetDoctrine> {
        Completion::existential(PowersetDoctrine::new())
    }

    fn un() -> Completion<PowersetDoctrine> {
        Completion::universal(PowersetDoctrine::new())
    }

    fn el(c: &Completion<PowersetDoctrine>, a: usize, b: usize, m: &[usize]) -> QuantElem<Subset> {
        c.elem(ObjId(a), ObjId(b), Subset::from_elems(a * b, m.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn choice_examples() {
        let c = ex();
        let cert = extract_choice(&c, &el(&c, 2, 1, &[0, 1])).unwrap().unwrap();
        assert_eq!(cert.witness.table, vec![0, 0]);
        // α = {(0,1), (1,0)}
        let cert = extract_choice(&c, &el(&c, 2, 2, &[1, 2])).unwrap().unwrap();
        assert_eq!(cert.witness.table, vec![1, 0]);
        assert!(cert.validated);
        assert!(extract_choice(&c, &el(&c, 2, 2, &[])).unwrap().is_none());
    }

    #[test]
    fn counterexample_examples() {
        let c = un();
        let cert = extract_counterexample(&c, &el(&c, 1, 2, &[1])).unwrap().unwrap();
        assert_eq!(cert.counterexample.table, vec![0]);
        assert!(extract_counterexample(&c, &el(&c, 1, 2, &[0, 1])).unwrap().is_none());
        let cert = extract_counterexample(&c, &el(&c, 2, 1, &[])).unwrap().unwrap();
        assert_eq!(cert.counterexample.table, vec![0, 0]);
    }

    #[test]
    fn wrong_polarity_is_rejected() {
        let c = ex();
        let x = el(&un(), 1, 1, &[0]);
        assert!(extract_choice(&c, &x).is_err());
    }

    #[test]
    fn skolem_singletons() {
        let c = ex();
        for m in [&[][..], &[0][..]] {
            let alpha = Subset::from_elems(1, m.iter().copied()).unwrap();
            let r = skolem_check(&c, ObjId(1), ObjId(1), ObjId(1), &alpha).unwrap();
            assert!(r.equal());
            assert!(c.equiv_q(&r.lhs, &el(&c, 1, 1, m)).unwrap());
        }
    }

    #[test]
    fn skolem_diagonal() {
        let c = ex();
        let alpha = Subset::from_elems(4, [0, 3]).unwrap();
        let r = skolem_check(&c, ObjId(1), ObjId(2), ObjId(2), &alpha).unwrap();
        assert!(r.equal());
        let point = el(&c, 1, 4, &[1]);
        assert!(c.equiv_q(&r.lhs, &point).unwrap());
        assert!(c.equiv_q(&r.rhs, &point).unwrap());
    }
}
