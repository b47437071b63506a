use superpos::codebook::{bind, generate_codebook, make_binding_for, BindingKind, Scheme};
use superpos::container::{load, save, Artifact};
use superpos::seed;
use superpos::*;

#[test]
fn artifacts_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for (scheme, kind) in [
        (Scheme::Hdc, BindingKind::Permutation),
        (Scheme::Hrr, BindingKind::Circulant),
        (Scheme::Fhrr, BindingKind::Circulant),
        (Scheme::Fhrr, BindingKind::PhasorDiagonal),
        (Scheme::RandomUnitary, BindingKind::RandomUnitary),
    ] {
        let n = 24;
        let cb = generate_codebook(scheme, n, 5, 0.25, 7).unwrap();
        let w = make_binding_for(scheme, kind, n, 0.9, 8).unwrap();
        let cb_path = dir.path().join("codebook.bin");
        let w_path = dir.path().join("binding.bin");
        save(&cb, &cb_path).unwrap();
        save(&w, &w_path).unwrap();
        let cb2: Codebook = load(&cb_path).unwrap();
        let w2: BindingOperator = load(&w_path).unwrap();
        assert_eq!(cb2, cb);
        assert_eq!(w2.kind(), kind);
        for power in [-3i64, 0, 1, 5] {
            assert_eq!(bind(&w2, cb.column(2), power).unwrap(), bind(&w, cb.column(2), power).unwrap());
        }
        let config = NetworkConfig { activation: Activation::Linear, contraction: 0.9, n_dim: n };
        let seq = InputSequence::from_tokens(&[0, 4, 1]);
        let st = encode_sequence(&config, &cb, &w, &seq, &NoiseModel::None, &mut seed::rng(0)).unwrap();
        let st_path = dir.path().join("state.bin");
        save(&st, &st_path).unwrap();
        assert_eq!(load::<MemoryState>(&st_path).unwrap(), st);
    }
}

#[test]
fn header_is_checked() {
    let st = MemoryState::empty(4);
    let bytes = st.to_bytes();
    assert_eq!(&bytes[..4], b"SPOS");
    let mut future = bytes.clone();
    future[4] = 0xff;
    assert!(matches!(MemoryState::from_bytes(&future), Err(Error::Container(_))));
    assert!(Codebook::from_bytes(&bytes).is_err());
    assert!(MemoryState::from_bytes(b"nope").is_err());
}
