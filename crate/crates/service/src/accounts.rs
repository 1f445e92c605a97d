use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::RngCore;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ServiceError;

pub const MIN_CREDENTIAL_LEN: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Student,
    Teacher,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Student => "student",
            Role::Teacher => "teacher",
        })
    }
}

/// A salted SHA-256 digest of a credential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Credential {
    pub salt: String,
    pub hash: String,
}

impl Credential {
    pub fn new(secret: &str) -> Self {
        let mut salt = [0u8; 16];
        rand::thread_rng().fill_bytes(&mut salt);
        let salt = hex::encode(salt);
        let hash = digest(&salt, secret);
        Credential { salt, hash }
    }

    pub fn verify(&self, secret: &str) -> bool {
        let computed = digest(&self.salt, secret);
        // Compare every byte so timing does not depend on the prefix.
        computed.len() == self.hash.len()
            && computed.bytes().zip(self.hash.bytes()).fold(0u8, |acc, (a, b)| acc | (a ^ b)) == 0
    }
}

fn digest(salt: &str, secret: &str) -> String {
    let mut h = Sha256::new();
    h.update(salt.as_bytes());
    h.update([0]);
    h.update(secret.as_bytes());
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserAccount {
    pub id: String,
    pub role: Role,
    pub login: String,
    pub credential: Credential,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub user_id: String,
    pub role: Role,
}

pub fn random_token() -> String {
    let mut bytes = [0u8; 24];
    rand::thread_rng().fill_bytes(&mut bytes);
    hex::encode(bytes)
}

/// A JSON map persisted to one file, rewritten atomically on every change.
#[derive(Debug)]
pub struct JsonTable<V> {
    path: PathBuf,
    rows: BTreeMap<String, V>,
}

impl<V: Serialize + DeserializeOwned> JsonTable<V> {
    pub fn load(path: &Path) -> Result<Self, ServiceError> {
        let rows = match fs::read(path) {
            Ok(bytes) => serde_json::from_slice(&bytes)?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(JsonTable { path: path.to_owned(), rows })
    }

    pub fn get(&self, key: &str) -> Option<&V> {
        self.rows.get(key)
    }

    pub fn values(&self) -> impl Iterator<Item = &V> {
        self.rows.values()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Inserts and persists; the in-memory row is dropped again if the
    /// write fails.
    pub fn insert(&mut self, key: String, value: V) -> Result<(), ServiceError> {
        let previous = self.rows.insert(key.clone(), value);
        if let Err(e) = self.save() {
            match previous {
                Some(p) => self.rows.insert(key, p),
                None => self.rows.remove(&key),
            };
            return Err(e);
        }
        Ok(())
    }

    fn save(&self) -> Result<(), ServiceError> {
        let tmp = self.path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(&self.rows)?)?;
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
