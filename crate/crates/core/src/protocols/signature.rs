use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::procset::Pid;

/// Opaque signature token.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature(pub String);

impl Signature {
    /// Conventional signature carried by the initial register value.
    pub fn genesis() -> Self {
        Signature("genesis".into())
    }
}

pub trait SignatureScheme: Send + Sync {
    fn sign(&self, signer: Pid, statement: &[u8]) -> Signature;
    fn verify(&self, signer: Pid, sig: &Signature, statement: &[u8]) -> bool;
}

/// Deterministic stand-in: the token is the signer index and a digest of
/// signer and statement. Unforgeability is enforced by the simulator, which
/// never lets one process sign for another.
#[derive(Clone, Copy, Debug, Default)]
pub struct MockSignatures;

impl SignatureScheme for MockSignatures {
    fn sign(&self, signer: Pid, statement: &[u8]) -> Signature {
        let mut h = Sha256::new();
        h.update([signer.0]);
        h.update(statement);
        Signature(format!("{}:{}", signer.0, hex::encode(h.finalize())))
    }

    fn verify(&self, signer: Pid, sig: &Signature, statement: &[u8]) -> bool {
        self.sign(signer, statement) == *sig
    }
}
