//! Computed extremal polynomials against the shipped reference tables.

use extremal_lab::exact::{rat, MultiIndex, Polynomial};
use extremal_lab::golden::{check_table, erratum_is_structural, Erratum, GoldenTable};
use extremal_lab::GroupContext;

fn mono(e: &[u16], n: usize) -> MultiIndex {
    let mut v = e.to_vec();
    v.resize(n, 0);
    MultiIndex::from_exponents(v)
}

#[test]
fn rank_two_step_six_p3() {
    let table = GoldenTable::r2s6_p3();
    let g = GroupContext::new(2, 6).unwrap();
    assert_eq!(g.dim(), 23);
    let report = check_table(&g, &table).unwrap();
    assert!(report.against_corrected.is_empty(), "{:?}", report.against_corrected);
    assert!(report.errata_account_for_display(&table));
    assert_eq!(report.against_display.len(), 2);

    let p3 = g.extremal_polynomial(2).unwrap();
    let slices = p3.slices();
    // d(X18) - d(X3) = 4, so v18 pairs with x1*x2^3 and not with x1*x3^2 (weight 5).
    assert_eq!(slices[17].coeff(&mono(&[1, 3], 23)), rat(1, 6));
    assert!(slices[17].coeff(&mono(&[1, 0, 2], 23)) == rat(0, 1));
    // P_3 depends on x1..x8 only.
    for s in slices {
        for (m, _) in s.terms() {
            assert!(m.exponents()[8..].iter().all(|&e| e == 0), "{m:?}");
        }
    }
    // Slots below X3 do not appear.
    assert!(slices[0].is_zero() && slices[1].is_zero());
    assert_eq!(slices[2], Polynomial::constant(23, rat(1, 1)));
}

#[test]
fn rank_three_step_four_quadrics() {
    let table = GoldenTable::r3s4_quadrics();
    let g = GroupContext::new(3, 4).unwrap();
    assert_eq!(g.dim(), 32);
    let report = check_table(&g, &table).unwrap();
    assert!(report.against_corrected.is_empty(), "{:?}", report.against_corrected);
    assert!(report.errata_account_for_display(&table));
    let p6 = g.extremal_polynomial(5).unwrap();
    assert_eq!(p6.slices()[26].coeff(&mono(&[0, 2], 32)), rat(1, 2));
    assert_eq!(p6.slices()[27].coeff(&mono(&[0, 1, 1], 32)), rat(1, 1));
}

#[test]
fn every_erratum_is_structural() {
    for table in [GoldenTable::r2s6_p3(), GoldenTable::r3s4_quadrics()] {
        let g = GroupContext::new(table.rank, table.step).unwrap();
        for b in &table.blocks {
            for e in &b.errata {
                assert!(erratum_is_structural(&g, b.index, e).unwrap(), "P_{} {e}", b.index + 1);
            }
        }
    }
}

#[test]
fn structural_check_rejects_wrong_corrections() {
    let g = GroupContext::new(2, 6).unwrap();
    let table = GoldenTable::r2s6_p3();
    let block = &table.blocks[0];
    // Turning each erratum around must fail the structural test.
    for e in &block.errata {
        let flipped = match e {
            Erratum::Add(t) => Erratum::Remove(t.clone()),
            Erratum::Remove(t) => Erratum::Add(t.clone()),
        };
        assert!(!erratum_is_structural(&g, block.index, &flipped).unwrap(), "{flipped}");
    }
    // Wrong coefficient on an otherwise valid addition.
    if let Some(Erratum::Add(t)) = block.errata.iter().find(|e| matches!(e, Erratum::Add(_))) {
        let mut t = t.clone();
        t.coeff = -t.coeff;
        assert!(!erratum_is_structural(&g, block.index, &Erratum::Add(t)).unwrap());
    }
}

#[test]
fn table_group_mismatch_is_an_error() {
    let g = GroupContext::new(2, 5).unwrap();
    assert!(check_table(&g, &GoldenTable::r2s6_p3()).is_err());
}
