//! Loading networks and codes from files or zoo names.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use sha2::{Digest, Sha256};
use vlnc_core::algebra::Domain;
use vlnc_core::netmodel::Network;
use vlnc_core::vlnc::VlncCode;
use vlnc_core::zoo::ZooEntry;

/// Input recorded in the run manifest.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InputDigest {
    pub name: String,
    pub origin: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub struct LoadedNet {
    pub net: Network,
    pub entry: Option<ZooEntry>,
    pub digest: InputDigest,
}

/// A readable file wins over a zoo mnemonic of the same spelling.
pub fn load_net(spec: &str) -> Result<LoadedNet> {
    if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        let net = Network::parse(&text).with_context(|| format!("parsing network file {spec}"))?;
        return Ok(LoadedNet {
            net,
            entry: None,
            digest: InputDigest {
                name: "net".into(),
                origin: spec.into(),
                sha256: sha256_hex(text.as_bytes()),
            },
        });
    }
    let entry = ZooEntry::parse(spec).map_err(|e| anyhow!("`{spec}` is neither a file nor a zoo network: {e}"))?;
    let net = entry.network();
    Ok(LoadedNet {
        digest: InputDigest {
            name: "net".into(),
            origin: format!("zoo:{}", entry.mnemonic()),
            sha256: sha256_hex(net.to_text().as_bytes()),
        },
        net,
        entry: Some(entry),
    })
}

/// `zoo:<name>` builds a listed code for a zoo network; anything else is a
/// code file.
pub fn load_code(spec: &str, net: &LoadedNet, domain: Option<&Domain>, dim: Option<usize>) -> Result<(VlncCode, InputDigest)> {
    if let Some(name) = spec.strip_prefix("zoo:") {
        let Some(entry) = net.entry else {
            bail!("zoo codes need a zoo network, got a network file");
        };
        let domain = match domain {
            Some(d) => d.clone(),
            None if name == "ring16" => Domain::ring(2, 2)?,
            None => bail!("`--field` is required for zoo code `{name}`"),
        };
        let code = entry
            .code(name, &domain, dim.unwrap_or(1))
            .map_err(|e| anyhow!("{e}; codes for {}: {}", entry.mnemonic(), entry.code_names().join(", ")))?;
        let digest = InputDigest {
            name: "code".into(),
            origin: format!("zoo:{}/{name}", entry.mnemonic()),
            sha256: sha256_hex(code.to_text().as_bytes()),
        };
        return Ok((code, digest));
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    let code = VlncCode::parse(&text).with_context(|| format!("parsing code file {spec}"))?;
    if let Some(d) = domain {
        if d != code.domain() {
            bail!("code domain {} differs from --field {d}", code.domain());
        }
    }
    if let Some(d) = dim {
        if d != code.dim() {
            bail!("code dimension {} differs from --dim {d}", code.dim());
        }
    }
    let digest = InputDigest {
        name: "code".into(),
        origin: spec.into(),
        sha256: sha256_hex(text.as_bytes()),
    };
    Ok((code, digest))
}

pub fn parse_fields(list: &str) -> Result<Vec<Domain>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<Domain>().map_err(|e| anyhow!("{e}")))
        .collect()
}
