use crate::action::ActionSet;

use super::ProofTerm;

/// Interleaving and synchronization of two local computations under `sync`.
pub fn zip_interleave(s1: &[ProofTerm], s2: &[ProofTerm], sync: &ActionSet) -> Vec<ProofTerm> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    loop {
        let (r1, r2) = (&s1[i..], &s2[j..]);
        let head1 = r1.first().and_then(ProofTerm::act);
        let head2 = r2.first().and_then(ProofTerm::act);
        let outside = |a: &Option<crate::action::Action>| a.as_ref().is_some_and(|a| !sync.contains(a));
        let inside = |a: &Option<crate::action::Action>| a.as_ref().is_some_and(|a| sync.contains(a));
        if !r1.is_empty() && outside(&head1) && (r2.is_empty() || inside(&head2) || r1.len() >= r2.len()) {
            out.push(ProofTerm::par_l(sync.clone(), r1[0].clone()));
            i += 1;
        } else if !r2.is_empty() && outside(&head2) && (r1.is_empty() || inside(&head1) || r1.len() < r2.len()) {
            out.push(ProofTerm::par_r(sync.clone(), r2[0].clone()));
            j += 1;
        } else if !r1.is_empty() && !r2.is_empty() && inside(&head1) && head1 == head2 {
            out.push(ProofTerm::syn(r1[0].clone(), r2[0].clone(), sync.clone()));
            i += 1;
            j += 1;
        } else {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action;
    use crate::syntax::parse_proof_term;

    fn ts(v: &[&str]) -> Vec<ProofTerm> {
        v.iter().map(|s| parse_proof_term(s).unwrap()).collect()
    }

    fn set(v: &[&str]) -> ActionSet {
        v.iter().map(|s| Action::new(s).unwrap()).collect()
    }

    #[test]
    fn clauses() {
        assert!(zip_interleave(&[], &[], &set(&[])).is_empty());
        assert_eq!(zip_interleave(&ts(&["a"]), &ts(&["b"]), &set(&[])), ts(&["|L[]a", "|R[]b"]));
        assert_eq!(zip_interleave(&ts(&["a"]), &ts(&["a"]), &set(&["a"])), ts(&["<a,a>[a]"]));
    }

    #[test]
    fn longer_side_goes_first_and_sync_waits() {
        assert_eq!(zip_interleave(&ts(&["a"]), &ts(&["b", ".b c"]), &set(&[])), ts(&["|R[]b", "|L[]a", "|R[].b c"]));
        assert_eq!(
            zip_interleave(&ts(&["c", ".c a"]), &ts(&["a"]), &set(&["a"])),
            ts(&["|L[a]c", "<.c a,a>[a]"])
        );
        assert!(zip_interleave(&ts(&["a"]), &ts(&["b"]), &set(&["a", "b"])).is_empty());
    }
}
