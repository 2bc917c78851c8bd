//! The shipped fixture files must stay byte-identical to what the library
//! emits, and loading them must reproduce the in-memory fixtures.

use std::path::PathBuf;

use kc_logic::fixtures;
use kc_logic::model::Model;
use kc_logic::proof::Proof;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn model_files_match_canonical_emission() {
    for (name, model) in fixtures::models() {
        let path = fixtures_dir().join("models").join(format!("{name}.json"));
        let on_disk =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, model.to_json(), "{name}.json drifted");
        assert_eq!(Model::load(&path).unwrap(), model, "{name}.json reload");
    }
}

#[test]
fn proof_files_match_bundled_sources() {
    for name in fixtures::PROOF_NAMES {
        let path = fixtures_dir().join("proofs").join(format!("{name}.json"));
        let on_disk =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(
            on_disk,
            fixtures::proof_json(name).unwrap(),
            "{name}.json drifted"
        );
        assert_eq!(
            Proof::load(&path).unwrap(),
            fixtures::proof(name).unwrap(),
            "{name}.json reload"
        );
    }
}
