use aagl_ttp::{
    gz_bound, to_mscspv_instance, ttp_keygen, ttp_keygen_with_z, verify_attack_solution, Family,
    MSCSPvInstance, TTPParams, TtpError, Verdict,
};
use braid_core::{equal, equal_mod_delta_sq, BraidWord};

fn params(n: usize, seed: u64) -> TTPParams {
    TTPParams {
        n,
        alpha: 2,
        beta: 2,
        gamma: 2,
        max_word_len: 4,
        m: 16,
        seed,
    }
}

#[test]
fn gz_bound_spot_values() {
    assert_eq!(gz_bound(3, 4), 2);
    assert_eq!(gz_bound(5, 10), 4);
    assert_eq!(gz_bound(10, 18), 5);
}

#[test]
fn gz_bound_is_minimal() {
    for n in [3usize, 5, 8, 12] {
        for m in [1u32, 4, 16, 64, 128] {
            let g = gz_bound(n, m);
            let base = num_bigint::BigUint::from(2 * n - 2);
            let target = num_bigint::BigUint::from(1u8) << m;
            assert!(base.pow(g as u32) >= target);
            if g > 0 {
                assert!(base.pow(g as u32 - 1) < target);
            }
        }
    }
}

#[test]
fn keygen_invariants_over_seeds() {
    for seed in 0..50u64 {
        let kp = ttp_keygen(&params(8, seed)).unwrap();
        let s = &kp.secret;
        // index separation
        for &l in &s.bl {
            for &r in &s.br {
                assert!(l.abs_diff(r) >= 2, "seed {seed}: |{l}-{r}| < 2");
            }
        }
        // words stay inside their family's generators
        for w in &s.w_words {
            assert!(w.letters().iter().all(|&x| s.bl.contains(&(x.unsigned_abs() as usize))));
        }
        for v in &s.v_words {
            assert!(v.letters().iter().all(|&x| s.br.contains(&(x.unsigned_abs() as usize))));
        }
        // z has exactly the bound's letter count, freely reduced
        assert_eq!(s.z.artin_len(), gz_bound(8, 16) as usize);
        assert_eq!(s.z.free_reduced().artin_len(), s.z.artin_len());
        // published residues have delta power 0 or 1
        for nf in kp.public.w_pub.iter().chain(kp.public.v_pub.iter()) {
            assert!(nf.inf() == 0 || nf.inf() == 1, "inf {} out of residue range", nf.inf());
        }
        // published conjugates match the secrets modulo the center
        for (w, nf) in s.w_words.iter().zip(&kp.public.w_pub) {
            let c = BraidWord::conjugate(&s.z, w).unwrap();
            assert!(equal_mod_delta_sq(&c, &nf.to_word()).unwrap());
        }
        // cross-family commutation survives conjugation and reduction
        for wp in &kp.public.w_pub {
            for vp in &kp.public.v_pub {
                let a = wp.to_word().product(&vp.to_word()).unwrap();
                let b = vp.to_word().product(&wp.to_word()).unwrap();
                assert!(equal_mod_delta_sq(&a, &b).unwrap());
            }
        }
    }
}

#[test]
fn keygen_deterministic() {
    let p = params(8, 42);
    assert_eq!(ttp_keygen(&p).unwrap(), ttp_keygen(&p).unwrap());
    let other = ttp_keygen(&params(8, 43)).unwrap();
    assert_ne!(ttp_keygen(&p).unwrap(), other);
}

#[test]
fn keygen_rejects_infeasible_split() {
    let p = TTPParams {
        alpha: 4,
        beta: 4,
        ..params(8, 0)
    };
    assert!(matches!(
        ttp_keygen(&p),
        Err(TtpError::InfeasibleSplit { .. })
    ));
    assert!(ttp_keygen(&TTPParams { n: 4, ..params(8, 0) }).is_err());
}

#[test]
fn identity_z_hook_publishes_plain_words() {
    let p = params(8, 7);
    let kp = ttp_keygen_with_z(&p, Some(BraidWord::identity(8))).unwrap();
    for (w, nf) in kp.secret.w_words.iter().zip(&kp.public.w_pub) {
        assert!(equal_mod_delta_sq(w, &nf.to_word()).unwrap());
    }
    let inst = to_mscspv_instance(&kp.public);
    for (v, y) in kp.secret.v_words.iter().zip(inst.family(Family::V)) {
        assert!(equal_mod_delta_sq(v, y).unwrap());
    }
}

#[test]
fn instance_shape_and_serde() {
    let kp = ttp_keygen(&params(8, 3)).unwrap();
    let inst = to_mscspv_instance(&kp.public);
    assert_eq!(inst.elements.len(), 4);
    assert_eq!(inst.family(Family::W).count(), 2);
    assert_eq!(inst.family(Family::V).count(), 2);
    assert_eq!(inst.g_z, kp.public.g_z);
    let json = serde_json::to_string(&inst).unwrap();
    assert_eq!(serde_json::from_str::<MSCSPvInstance>(&json).unwrap(), inst);
    // secret material never leaks into the instance serialization
    assert!(!json.contains("\"z\""));
    assert!(!json.contains("bl"));
}

#[test]
fn verdicts() {
    let kp = ttp_keygen(&params(8, 11)).unwrap();
    let z = &kp.secret.z;
    assert_eq!(
        verify_attack_solution(&kp, z, None).unwrap(),
        Verdict::Exact
    );
    // a freely different spelling of z is still exact
    let respelled = z.product(&BraidWord::new(8, vec![2, -2]).unwrap()).unwrap();
    assert_eq!(
        verify_attack_solution(&kp, &respelled, None).unwrap(),
        Verdict::Exact
    );
    // z times the central full twist acts identically
    let shifted = z.product(&BraidWord::delta_pow(8, 2)).unwrap();
    assert_eq!(
        verify_attack_solution(&kp, &shifted, None).unwrap(),
        Verdict::Equivalent
    );
    assert!(!equal(&shifted, z).unwrap());
    // a generator crossing both families breaks equivalence
    let bad = z.product(&BraidWord::new(8, vec![kp.secret.bl[0] as i32]).unwrap()).unwrap();
    let verdict = verify_attack_solution(&kp, &bad, None).unwrap();
    // commuting with its own family is not enough unless it also commutes
    // with every w word, which a BL generator generally does not
    if verdict == Verdict::Equivalent {
        let d = BraidWord::new(8, vec![kp.secret.bl[0] as i32]).unwrap();
        for w in &kp.secret.w_words {
            assert!(equal(&d.product(w).unwrap(), &w.product(&d).unwrap()).unwrap());
        }
    }
    // recovered x sequence is cross-checked
    let xs: Vec<BraidWord> = kp
        .secret
        .w_words
        .iter()
        .chain(kp.secret.v_words.iter())
        .cloned()
        .collect();
    assert_eq!(
        verify_attack_solution(&kp, z, Some(&xs)).unwrap(),
        Verdict::Exact
    );
    let mut wrong = xs.clone();
    wrong[0] = wrong[0].product(&BraidWord::new(8, vec![1]).unwrap()).unwrap();
    assert_eq!(
        verify_attack_solution(&kp, z, Some(&wrong)).unwrap(),
        Verdict::Invalid
    );
}
