//! Line-oriented text format for simplicial sets, subsets and maps.
//!
//! ```text
//! # comment
//! space X
//! 0 v :
//! 1 a : v v
//! 2 t : a v[s0] a
//! subset A of X : 1:a
//! map f : X -> Y
//! 1 a -> w[s0]
//! end
//! ```
//!
//! A simplex record is `dim id : face_0 … face_dim`. A face of an
//! `n`-simplex is written `id` (a non-degenerate `(n-1)`-simplex) or
//! `id[s_j1 … s_jk]` written without separators as `id[s0s2]`, the
//! degeneracy word applied to a simplex of dimension `n-1-k`; words are
//! rendered in weakly increasing canonical form. Records before any `space`
//! header belong to a space named `X`. Subset records list generators of a
//! simplicial subset as `dim:id`. A map block lists `dim id -> image` for
//! every non-degenerate source simplex, the image written like a face.
//! Identifiers may not contain whitespace, `:`, `[`, `]` or `#`.

use std::fmt::Write as _;

use super::{Monotone, Simplex, SimplexRef, SimplicialMap, SimplicialSet, SubSet};
use crate::error::{Error, Result};

/// Parsed contents of a text file.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub spaces: Vec<(String, SimplicialSet)>,
    pub subsets: Vec<(String, String, SubSet)>,
    pub maps: Vec<(String, SimplicialMap)>,
}

impl Document {
    pub fn space(&self, name: &str) -> Option<&SimplicialSet> {
        self.spaces.iter().find(|(n, _)| n == name).map(|(_, x)| x)
    }

    pub fn subset(&self, name: &str) -> Option<&SubSet> {
        self.subsets.iter().find(|(n, _, _)| n == name).map(|(_, _, s)| s)
    }

    pub fn map(&self, name: &str) -> Option<&SimplicialMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, x) in &self.spaces {
            let _ = writeln!(out, "space {name}");
            out.push_str(&render(x));
        }
        for (name, space, sub) in &self.subsets {
            let members: Vec<String> =
                sub.members().iter().map(|&r| format!("{}:{}", r.dim, sub.host().name(r))).collect();
            let _ = writeln!(out, "subset {name} of {space} : {}", members.join(" "));
        }
        for (name, f) in &self.maps {
            let src = self.space_name(f.source()).unwrap_or("?");
            let tgt = self.space_name(f.target()).unwrap_or("?");
            let _ = writeln!(out, "map {name} : {src} -> {tgt}");
            for r in f.source().simplices() {
                let _ = writeln!(out, "{} {} -> {}", r.dim, f.source().name(r), render_simplex(f.target(), f.image_of(r)));
            }
            out.push_str("end\n");
        }
        out
    }

    fn space_name(&self, x: &SimplicialSet) -> Option<&str> {
        self.spaces.iter().find(|(_, y)| y == x).map(|(n, _)| n.as_str())
    }
}

/// Renders a possibly degenerate simplex as `id` or `id[s…]`.
pub fn render_simplex(x: &SimplicialSet, s: &Simplex) -> String {
    let name = x.name(s.root);
    if s.is_degenerate() {
        let word: String = s.degeneracy.to_word().iter().map(|j| format!("s{j}")).collect();
        format!("{name}[{word}]")
    } else {
        name.to_string()
    }
}

/// Renders the simplex records of a single simplicial set, no header.
pub fn render(x: &SimplicialSet) -> String {
    let mut out = String::new();
    for r in x.simplices() {
        let faces: Vec<String> = x.faces(r).iter().map(|f| render_simplex(x, f)).collect();
        if faces.is_empty() {
            let _ = writeln!(out, "{} {} :", r.dim, x.name(r));
        } else {
            let _ = writeln!(out, "{} {} : {}", r.dim, x.name(r), faces.join(" "));
        }
    }
    out
}

/// Parses a file holding one simplicial set (the first space of the document).
pub fn parse(text: &str) -> Result<SimplicialSet> {
    let doc = parse_document(text)?;
    doc.spaces
        .into_iter()
        .next()
        .map(|(_, x)| x)
        .ok_or(Error::Parse { line: 0, msg: "no simplices".into() })
}

struct RawSimplex {
    line: usize,
    dim: usize,
    name: String,
    faces: Vec<(String, Vec<usize>)>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty() && !s.contains([':', '[', ']', '#']) && !s.contains(char::is_whitespace)
}

/// Parses `id` or `id[s0s1…]`.
fn parse_face(token: &str, line: usize) -> Result<(String, Vec<usize>)> {
    match token.split_once('[') {
        None => {
            if !valid_ident(token) {
                return Err(perr(line, format!("bad identifier {token:?}")));
            }
            Ok((token.to_string(), Vec::new()))
        }
        Some((id, rest)) => {
            let word = rest.strip_suffix(']').ok_or_else(|| perr(line, format!("unclosed degeneracy in {token:?}")))?;
            if !valid_ident(id) {
                return Err(perr(line, format!("bad identifier {id:?}")));
            }
            let mut out = Vec::new();
            for part in word.split('s').skip(1) {
                out.push(part.parse().map_err(|_| perr(line, format!("bad degeneracy word {word:?}")))?);
            }
            if out.is_empty() || !word.starts_with('s') {
                return Err(perr(line, format!("bad degeneracy word {word:?}")));
            }
            Ok((id.to_string(), out))
        }
    }
}

fn build_space(name: &str, raws: Vec<RawSimplex>) -> Result<SimplicialSet> {
    let top = raws.iter().map(|r| r.dim + 1).max().unwrap_or(0);
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top];
    let mut by_dim: Vec<Vec<&RawSimplex>> = vec![Vec::new(); top];
    for r in &raws {
        if names[r.dim].contains(&r.name) {
            return Err(perr(r.line, format!("duplicate simplex {} in dimension {} of {name}", r.name, r.dim)));
        }
        names[r.dim].push(r.name.clone());
        by_dim[r.dim].push(r);
    }
    let find = |dim: usize, id: &str| names.get(dim).and_then(|ns| ns.iter().position(|n| n == id));
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); top];
    for (d, rs) in by_dim.iter().enumerate() {
        for r in rs {
            let expected = if d == 0 { 0 } else { d + 1 };
            if r.faces.len() != expected {
                return Err(perr(r.line, format!("a {d}-simplex needs {expected} faces, found {}", r.faces.len())));
            }
            let mut list = Vec::new();
            for (id, word) in &r.faces {
                let target_dim = (d - 1)
                    .checked_sub(word.len())
                    .ok_or_else(|| perr(r.line, format!("degeneracy word too long on face {id}")))?;
                let index =
                    find(target_dim, id).ok_or_else(|| perr(r.line, format!("unknown {target_dim}-simplex {id}")))?;
                let degeneracy = Monotone::from_word(word, target_dim).map_err(|e| perr(r.line, e.to_string()))?;
                list.push(Simplex { root: SimplexRef::new(target_dim, index), degeneracy });
            }
            faces[d].push(list);
        }
    }
    SimplicialSet::new(names, faces).map_err(|e| match &e {
        Error::Identity { simplex, .. } => match raws.iter().filter(|r| &r.name == simplex).max_by_key(|r| r.dim) {
            Some(r) => perr(r.line, e.to_string()),
            None => e,
        },
        _ => e,
    })
}

fn lookup_simplex(x: &SimplicialSet, dim: usize, token: &str, line: usize) -> Result<Simplex> {
    let (id, word) = parse_face(token, line)?;
    let target_dim = dim.checked_sub(word.len()).ok_or_else(|| perr(line, "degeneracy word too long"))?;
    let root = x.find(target_dim, &id).ok_or_else(|| perr(line, format!("unknown {target_dim}-simplex {id}")))?;
    let degeneracy = Monotone::from_word(&word, target_dim).map_err(|e| perr(line, e.to_string()))?;
    Ok(Simplex { root, degeneracy })
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut current: Option<(String, Vec<RawSimplex>)> = None;
    let mut pending_maps: Vec<(usize, String, String, String, Vec<(usize, usize, String, String)>)> = Vec::new();
    let mut pending_subsets: Vec<(usize, String, String, Vec<String>)> = Vec::new();
    let mut in_map = false;

    fn flush(doc: &mut Document, current: &mut Option<(String, Vec<RawSimplex>)>) -> Result<()> {
        if let Some((name, raws)) = current.take() {
            let x = build_space(&name, raws)?;
            doc.spaces.push((name, x));
        }
        Ok(())
    }

    for (k, raw_line) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw_line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        if in_map {
            if head == "end" {
                in_map = false;
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| perr(line_no, "expected `dim id -> image`"))?;
            let mut l = lhs.split_whitespace();
            let dim: usize =
                l.next().and_then(|d| d.parse().ok()).ok_or_else(|| perr(line_no, "expected a dimension"))?;
            let id = l.next().ok_or_else(|| perr(line_no, "expected an identifier"))?;
            let image = rhs.trim();
            pending_maps.last_mut().unwrap().4.push((line_no, dim, id.to_string(), image.to_string()));
            continue;
        }
        match head {
            "space" => {
                flush(&mut doc, &mut current)?;
                let name = words.next().filter(|n| valid_ident(n)).ok_or_else(|| perr(line_no, "space needs a name"))?;
                current = Some((name.to_string(), Vec::new()));
            }
            "subset" => {
                flush(&mut doc, &mut current)?;
                let (lhs, rhs) = line.split_once(" : ").or_else(|| line.split_once(" :")).ok_or_else(|| perr(line_no, "expected `subset NAME of SPACE : …`"))?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                if parts.len() != 4 || parts[2] != "of" {
                    return Err(perr(line_no, "expected `subset NAME of SPACE : …`"));
                }
                pending_subsets.push((
                    line_no,
                    parts[1].to_string(),
                    parts[3].to_string(),
                    rhs.split_whitespace().map(str::to_string).collect(),
                ));
            }
            "map" => {
                flush(&mut doc, &mut current)?;
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 6 || parts[2] != ":" || parts[4] != "->" {
                    return Err(perr(line_no, "expected `map NAME : SOURCE -> TARGET`"));
                }
                pending_maps.push((line_no, parts[1].to_string(), parts[3].to_string(), parts[5].to_string(), Vec::new()));
                in_map = true;
            }
            _ => {
                let dim: usize = head.parse().map_err(|_| perr(line_no, format!("unexpected token {head:?}")))?;
                let name = words.next().ok_or_else(|| perr(line_no, "expected an identifier"))?;
                if !valid_ident(name) {
                    return Err(perr(line_no, format!("bad identifier {name:?}")));
                }
                if words.next() != Some(":") {
                    return Err(perr(line_no, "expected `:` after the identifier"));
                }
                let faces = words.map(|t| parse_face(t, line_no)).collect::<Result<Vec<_>>>()?;
                let cur = current.get_or_insert_with(|| ("X".to_string(), Vec::new()));
                cur.1.push(RawSimplex { line: line_no, dim, name: name.to_string(), faces });
            }
        }
    }
    if in_map {
        return Err(perr(text.lines().count(), "unterminated map block"));
    }
    flush(&mut doc, &mut current)?;

    for (line_no, name, space, gens) in pending_subsets {
        let x = doc.space(&space).ok_or_else(|| perr(line_no, format!("unknown space {space}")))?.clone();
        let mut refs = Vec::new();
        for g in gens {
            let (d, id) = g.split_once(':').ok_or_else(|| perr(line_no, format!("expected dim:id, found {g:?}")))?;
            let d: usize = d.parse().map_err(|_| perr(line_no, format!("bad dimension in {g:?}")))?;
            refs.push(x.find(d, id).ok_or_else(|| perr(line_no, format!("unknown simplex {g}")))?);
        }
        let sub = SubSet::generated(&x, refs)?;
        doc.subsets.push((name, space, sub));
    }
    for (line_no, name, src, tgt, rows) in pending_maps {
        let s = doc.space(&src).ok_or_else(|| perr(line_no, format!("unknown space {src}")))?.clone();
        let t = doc.space(&tgt).ok_or_else(|| perr(line_no, format!("unknown space {tgt}")))?.clone();
        let mut images: Vec<Vec<Option<Simplex>>> = (0..s.num_dims()).map(|d| vec![None; s.count(d)]).collect();
        for (l, dim, id, image) in rows {
            let r = s.find(dim, &id).ok_or_else(|| perr(l, format!("unknown source simplex {id}")))?;
            images[r.dim][r.index] = Some(lookup_simplex(&t, dim, &image, l)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(d, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(k, img)| {
                        img.ok_or_else(|| perr(line_no, format!("map {name} has no image for {}", s.name(SimplexRef::new(d, k)))))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        doc.maps.push((name, SimplicialMap::new(s, t, images)?));
    }
    Ok(doc)
}
