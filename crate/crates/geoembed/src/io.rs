//! JSON file formats.
//!
//! Groups are `{"degree": n, "generators": [[…], …]}`; actions and
//! homomorphisms key their permutation images by generator name, e.g.
//! `{"signature": "(0;2,3,8)", "degree": 2, "images": {"x": [1,0], "y": [0,1]}}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use geoembed_core::fuchsian::{CosetAction, FuchsianSignature};
use geoembed_core::homs::GroupHom;
use geoembed_core::{library, Error, PermGroup, Permutation, Presentation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}:{line}:{column}: {message}")]
    Json { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Invalid { context: String, source: Error },
}

impl IoError {
    fn invalid(context: impl Into<String>, source: Error) -> Self {
        IoError::Invalid { context: context.into(), source }
    }
}

pub type IoResult<T> = Result<T, IoError>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> IoResult<T> {
    let text = fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })?;
    parse_json(&text, &path.display().to_string())
}

/// Parses JSON, reporting errors with line and column under the name `origin`.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> IoResult<T> {
    serde_json::from_str(text).map_err(|e| IoError::Json {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline; byte-identical for equal values.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> IoResult<()> {
    fs::write(path, to_json(value)).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<Presentation, Error> {
        Presentation::parse(&self.generators, &self.relators)
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            generators: p.generators().to_vec(),
            relators: p.relators().iter().map(|r| p.display_word(r)).collect(),
        }
    }
}

/// Permutation images keyed by generator name.
pub type NamedImages = BTreeMap<String, Vec<u32>>;

fn named_images(names: &[String], images: &[Permutation]) -> NamedImages {
    names.iter().cloned().zip(images.iter().map(|p| p.images().to_vec())).collect()
}

fn images_in_order(names: &[String], images: &NamedImages, context: &str) -> IoResult<Vec<Permutation>> {
    if let Some(extra) = images.keys().find(|k| !names.contains(k)) {
        return Err(IoError::invalid(
            context,
            Error::Parse { message: format!("unknown generator {extra}"), column: 1 },
        ));
    }
    names
        .iter()
        .map(|n| {
            let img = images.get(n).ok_or_else(|| {
                IoError::invalid(context, Error::Parse { message: format!("missing image of {n}"), column: 1 })
            })?;
            Permutation::from_images(img.clone()).map_err(|e| IoError::invalid(format!("{context}: image of {n}"), e))
        })
        .collect()
}

fn signature_names(sig: &FuchsianSignature) -> Vec<String> {
    sig.presentation().presentation.generators().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub signature: FuchsianSignature,
    pub degree: usize,
    pub images: NamedImages,
}

impl ActionFile {
    pub fn from_action(a: &CosetAction) -> Self {
        ActionFile {
            signature: a.signature().clone(),
            degree: a.degree(),
            images: named_images(&signature_names(a.signature()), a.images()),
        }
    }

    pub fn to_action(&self) -> IoResult<CosetAction> {
        let images = images_in_order(&signature_names(&self.signature), &self.images, "action")?;
        if let Some(p) = images.iter().find(|p| p.degree() != self.degree) {
            return Err(IoError::invalid("action", Error::DegreeMismatch { expected: self.degree, found: p.degree() }));
        }
        CosetAction::new(self.signature.clone(), images).map_err(|e| IoError::invalid("action", e))
    }
}

/// A target group: inline, a path to a group file, or a library name such as
/// `PSL2(7)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetRef {
    Inline(PermGroup),
    Reference(String),
}

impl TargetRef {
    /// Resolves references relative to `base` (the directory of the file that
    /// mentions them); names that are not files are looked up in the library.
    pub fn resolve(&self, base: &Path) -> IoResult<PermGroup> {
        match self {
            TargetRef::Inline(g) => Ok(g.clone()),
            TargetRef::Reference(r) => resolve_target(r, base),
        }
    }
}

pub fn resolve_target(reference: &str, base: &Path) -> IoResult<PermGroup> {
    let path = base.join(reference);
    if path.is_file() {
        return read_json(&path);
    }
    library::by_name(reference).map_err(|e| IoError::invalid(format!("target {reference}"), e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFile {
    pub signature: FuchsianSignature,
    pub target: TargetRef,
    pub images: NamedImages,
}

impl HomFile {
    pub fn from_hom(h: &GroupHom, sig: &FuchsianSignature) -> Self {
        HomFile {
            signature: sig.clone(),
            target: TargetRef::Inline(h.codomain().clone()),
            images: named_images(&signature_names(sig), h.images()),
        }
    }

    /// Builds the homomorphism; `target` overrides the file's target.
    pub fn to_hom(&self, base: &Path, target: Option<PermGroup>) -> IoResult<GroupHom> {
        let group = match target {
            Some(g) => g,
            None => self.target.resolve(base)?,
        };
        let images = images_in_order(&signature_names(&self.signature), &self.images, "homomorphism")?;
        GroupHom::on_signature(&self.signature, group, images).map_err(|e| IoError::invalid("homomorphism", e))
    }
}

/// Images of the Schreier generators of an action, in their canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerHomFile {
    pub degree: usize,
    pub images: Vec<Vec<u32>>,
}

impl StabilizerHomFile {
    pub fn from_images(degree: usize, images: &[Permutation]) -> Self {
        StabilizerHomFile { degree, images: images.iter().map(|p| p.images().to_vec()).collect() }
    }

    pub fn to_images(&self) -> IoResult<Vec<Permutation>> {
        self.images
            .iter()
            .map(|i| {
                let p = Permutation::from_images(i.clone()).map_err(|e| IoError::invalid("stabilizer hom", e))?;
                if p.degree() != self.degree {
                    return Err(IoError::invalid(
                        "stabilizer hom",
                        Error::DegreeMismatch { expected: self.degree, found: p.degree() },
                    ));
                }
                Ok(p)
            })
            .collect()
    }
}

/// Directory containing `path`, for resolving relative references.
pub fn parent_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

/// Writes an already serialized artifact.
pub fn write_json_text(path: &Path, text: &str) -> IoResult<()> {
    fs::write(path, text).map_err(|source| IoError::File { path: path.display().to_string(), source })
}
