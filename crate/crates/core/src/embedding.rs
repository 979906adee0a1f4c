//! The □-translation on sequents, and proof translations between GWF_N2 and
//! G3M_Nec in both directions.
//!
//! The translation acts elementwise, so a formula keeps its position in the
//! sequent; principal positions carry over unchanged.

use thiserror::Error;

use crate::kernel::{check_derivation, Calculus, Derivation, KernelError, RuleId};
use crate::search::{prove, SearchError};
use crate::sequent::{Position, Sequent, Side};
use crate::syntax::{box_translate, box_untranslate, conjoin, disjoin, Formula, SyntaxError};
use crate::transform::{eliminate_all_cuts, invert, TransformError};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Stratum(#[from] SyntaxError),
    #[error("`{0}` is not in the image of the translation")]
    NotInImage(String),
    #[error("invalid input derivation: {0}")]
    Invalid(#[from] KernelError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("the succedent must not be empty")]
    EmptySuccedent,
    #[error("internal error: {0}")]
    Internal(String),
}

type Result<T> = std::result::Result<T, EmbeddingError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedSequent {
    pub source: Sequent,
    pub image: Sequent,
}

pub fn translate_sequent(s: &Sequent) -> Result<TranslatedSequent> {
    let tr = |fs: &[Formula]| fs.iter().map(box_translate).collect::<std::result::Result<Vec<_>, _>>();
    Ok(TranslatedSequent {
        source: s.clone(),
        image: Sequent::new(tr(&s.antecedent)?, tr(&s.succedent)?),
    })
}

/// Inverse of [`translate_sequent`] on its image.
pub fn untranslate_sequent(s: &Sequent) -> Result<Sequent> {
    let un = |fs: &[Formula]| {
        fs.iter()
            .map(|f| box_untranslate(f).ok_or_else(|| EmbeddingError::NotInImage(f.to_string())))
            .collect::<Result<Vec<_>>>()
    };
    Ok(Sequent::new(un(&s.antecedent)?, un(&s.succedent)?))
}

/// Maps a GWF_N2 derivation to a G3M_Nec derivation of the translated
/// endsequent. Cuts are eliminated first.
pub fn embed_proof(d: &Derivation) -> Result<Derivation> {
    check_derivation_any(d)?;
    let d = if d.is_cut_free() {
        d.clone()
    } else {
        eliminate_all_cuts(d)?
    };
    let out = embed(&d)?;
    check_derivation(&out, Calculus::MNec)?;
    Ok(out)
}

fn check_derivation_any(d: &Derivation) -> Result<()> {
    crate::kernel::check_derivation_with(d, Calculus::Gwf, crate::kernel::CutPolicy::Allow)?;
    Ok(())
}

fn embed(d: &Derivation) -> Result<Derivation> {
    use RuleId::*;
    let image = translate_sequent(&d.conclusion)?.image;
    let premises = d.premises.iter().map(embed).collect::<Result<Vec<_>>>()?;
    let node = |rule, principal: Vec<Position>, premises| Derivation::new(image.clone(), rule, principal, premises);
    Ok(match d.rule {
        Id => node(IdM, d.principal.clone(), premises),
        LBot => node(LBotM, d.principal.clone(), premises),
        RStrict => {
            // R⊃□ on `A ⇒ B`, then R_N□.
            let inner = boxed_body(&image, d.principal[0])?;
            let mat = Derivation::infer_at(RMatM, Sequent::new(vec![], vec![inner.clone()]), &[(Side::Right, &inner)], premises)
                .map_err(EmbeddingError::Internal)?;
            node(RN, d.principal.clone(), vec![mat])
        }
        LRStrict => {
            // R⊃□ on `C⊃D, A ⇒ B`, then LR_M□.
            let cd = boxed_body(&image, d.principal[0])?;
            let ab = boxed_body(&image, d.principal[1])?;
            let mat = Derivation::infer_at(RMatM, Sequent::new(vec![cd], vec![ab.clone()]), &[(Side::Right, &ab)], premises)
                .map_err(EmbeddingError::Internal)?;
            node(LRM, d.principal.clone(), vec![mat])
        }
        r => {
            let pos = d.principal[0];
            let f = d.conclusion.get(pos).expect("checked derivation");
            let m = RuleId::local_for(Calculus::MNec, pos.side, f)
                .ok_or_else(|| EmbeddingError::Internal(format!("no modal counterpart for {r}")))?;
            node(m, d.principal.clone(), premises)
        }
    })
}

fn boxed_body(s: &Sequent, pos: Position) -> Result<Formula> {
    match s.get(pos).map(Formula::kind) {
        Some(crate::syntax::Kind::Box(b)) => Ok(b.clone()),
        _ => Err(EmbeddingError::Internal(format!("expected a box at {pos} in `{s}`"))),
    }
}

/// Maps a G3M_Nec derivation of a translated sequent back to GWF_N2.
/// Modal nodes are handled by inverting R⊃□ on their premise.
pub fn unembed_proof(d: &Derivation) -> Result<Derivation> {
    untranslate_sequent(&d.conclusion)?;
    check_derivation(d, Calculus::MNec)?;
    let out = unembed(d)?;
    check_derivation(&out, Calculus::Gwf)?;
    Ok(out)
}

fn unembed(d: &Derivation) -> Result<Derivation> {
    use RuleId::*;
    let source = untranslate_sequent(&d.conclusion)?;
    let node = |rule, premises| Derivation::new(source.clone(), rule, d.principal.clone(), premises);
    Ok(match d.rule {
        IdM => node(Id, vec![]),
        LBotM => node(LBot, vec![]),
        RN | LRM => {
            // The premise ends in `… ⇒ A⊃B` with A⊃B as its only succedent formula.
            let premise = &d.premises[0];
            let inverted = invert(premise, RMatM, Position::right(0))?;
            let sub = unembed(&inverted[0])?;
            node(if d.rule == RN { RStrict } else { LRStrict }, vec![sub])
        }
        r => {
            let pos = d.principal[0];
            let f = source.get(pos).expect("same shape as the image");
            let g = RuleId::local_for(Calculus::Gwf, pos.side, f)
                .ok_or_else(|| EmbeddingError::Internal(format!("no counterpart for {r}")))?;
            let premises = d.premises.iter().map(unembed).collect::<Result<Vec<_>>>()?;
            node(g, premises)
        }
    })
}

/// Decides `Γ ⇒ Δ` in GWF_N2 and the translated single formula
/// `⇒ □(⋀Γ^□ ⊃ ⋁Δ^□)` in G3M_Nec (`⇒ ⋁Δ^□` when Γ is empty).
pub fn companion_check(gamma: &[Formula], delta: &[Formula]) -> Result<(bool, bool)> {
    let disj = disjoin(delta).ok_or(EmbeddingError::EmptySuccedent)?;
    let direct = prove(&Sequent::new(gamma.to_vec(), delta.to_vec()), Calculus::Gwf)?.is_proved();
    let formula = match conjoin(gamma) {
        Some(conj) => Formula::strict(conj, disj),
        None => disj,
    };
    let image = box_translate(&formula)?;
    let modal = prove(&Sequent::new(vec![], vec![image]), Calculus::MNec)?.is_proved();
    Ok((direct, modal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_formula, parse_sequent};

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn proof(s: &str) -> Derivation {
        prove(&seq(s), Calculus::Gwf).unwrap().into_derivation().unwrap()
    }

    #[test]
    fn translation_examples() {
        assert_eq!(translate_sequent(&seq("p->q |- p->q")).unwrap().image, seq("[](p=>q) |- [](p=>q)"));
        assert_eq!(translate_sequent(&seq("p |- q")).unwrap().image, seq("p |- q"));
        assert_eq!(translate_sequent(&seq("bot |-")).unwrap().image, seq("bot |-"));
        assert!(translate_sequent(&seq("[]p |-")).is_err());
    }

    #[test]
    fn embed_strict_rules() {
        let e = embed_proof(&proof("|- p -> p")).unwrap();
        assert_eq!(e.rule, RuleId::RN);
        assert_eq!(e.premises[0].rule, RuleId::RMatM);
        assert!(e.premises[0].premises[0].conclusion.multiset_eq(&seq("p |- p")));

        let e = embed_proof(&proof("p -> q |- p -> q")).unwrap();
        assert_eq!(e.rule, RuleId::LRM);
        assert_eq!(e.premises[0].rule, RuleId::RMatM);

        let id = proof("p |- p");
        assert_eq!(embed_proof(&id).unwrap().rule, RuleId::IdM);
    }

    #[test]
    fn unembed_round_trip() {
        for s in ["p -> q |- p -> q", "|- p -> p", "p & q |- q | r", "p -> q, q -> r |- p -> r | s"] {
            let Some(d) = prove(&seq(s), Calculus::Gwf).unwrap().into_derivation() else {
                continue;
            };
            let back = unembed_proof(&embed_proof(&d).unwrap()).unwrap();
            assert!(back.conclusion.multiset_eq(&d.conclusion), "{s}");
        }
        let lr = unembed_proof(&embed_proof(&proof("p -> q |- p -> q")).unwrap()).unwrap();
        assert_eq!(lr.rule, RuleId::LRStrict);
    }

    #[test]
    fn boxed_atom_is_not_in_image() {
        let d = prove(&seq("[]p |- []p"), Calculus::MNec).unwrap().into_derivation().unwrap();
        assert!(matches!(unembed_proof(&d), Err(EmbeddingError::NotInImage(_))));
    }

    #[test]
    fn companion_examples() {
        let f = |s: &str| parse_formula(s).unwrap();
        assert_eq!(companion_check(&[f("p & q")], &[f("p")]).unwrap(), (true, true));
        assert_eq!(companion_check(&[f("p")], &[f("q")]).unwrap(), (false, false));
        assert_eq!(companion_check(&[f("bot")], &[f("p")]).unwrap(), (true, true));
        assert!(matches!(companion_check(&[f("p")], &[]), Err(EmbeddingError::EmptySuccedent)));
    }
}
