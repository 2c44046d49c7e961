//! Text formats: GRPD v1 (groupoids), COMOR v1 (comorphisms), BIS v1
//! (bisections). Whitespace-separated, `#` comments, canonical serialization
//! with identifiers ascending. Parse errors carry line and column.

use std::path::Path;
use std::sync::Arc;

use crate::bisection::Bisection;
use crate::comorphism::Comorphism;
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Mor, Ob};

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

#[derive(Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

/// Comment-stripped tokens of one line, keeping 1-based positions.
fn line_tokens(line: &str, lineno: usize) -> Vec<Tok<'_>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut toks = Vec::new();
    let mut col = 0;
    for piece in body.split_whitespace() {
        let at = body[col..].find(piece).unwrap() + col;
        toks.push(Tok {
            text: piece,
            line: lineno,
            col: at + 1,
        });
        col = at + piece.len();
    }
    toks
}

fn want_usize(tok: &Tok<'_>) -> Result<usize> {
    tok.text
        .parse::<usize>()
        .map_err(|_| parse_err(tok.line, tok.col, format!("expected integer, found `{}`", tok.text)))
}

fn want_arity(toks: &[Tok<'_>], n: usize) -> Result<()> {
    if toks.len() != n + 1 {
        let t = &toks[0];
        return Err(parse_err(
            t.line,
            t.col,
            format!("`{}` takes {} arguments, found {}", t.text, n, toks.len() - 1),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// GRPD v1

pub fn parse_grpd(text: &str) -> Result<FiniteGroupoid> {
    let mut n_objects: Option<usize> = None;
    let mut mors: Vec<(usize, Ob, Ob, usize, usize)> = Vec::new(); // id, src, tgt, line, col
    let mut ids: Vec<(Ob, Mor, usize, usize)> = Vec::new();
    let mut invs: Vec<(Mor, Mor, usize, usize)> = Vec::new();
    let mut cmps: Vec<(Mor, Mor, Mor, usize, usize)> = Vec::new();
    let mut saw_header = false;

    for (i, raw) in text.lines().enumerate() {
        let toks = line_tokens(raw, i + 1);
        if toks.is_empty() {
            continue;
        }
        let head = &toks[0];
        if !saw_header {
            if head.text != "grpd" {
                return Err(parse_err(head.line, head.col, "expected `grpd 1` header"));
            }
            want_arity(&toks, 1)?;
            if toks[1].text != "1" {
                return Err(parse_err(toks[1].line, toks[1].col, "unsupported version"));
            }
            saw_header = true;
            continue;
        }
        match head.text {
            "objects" => {
                want_arity(&toks, 1)?;
                if n_objects.replace(want_usize(&toks[1])?).is_some() {
                    return Err(parse_err(head.line, head.col, "duplicate `objects` line"));
                }
            }
            "m" => {
                want_arity(&toks, 3)?;
                mors.push((
                    want_usize(&toks[1])?,
                    want_usize(&toks[2])?,
                    want_usize(&toks[3])?,
                    head.line,
                    head.col,
                ));
            }
            "id" => {
                want_arity(&toks, 2)?;
                ids.push((
                    want_usize(&toks[1])?,
                    want_usize(&toks[2])?,
                    head.line,
                    head.col,
                ));
            }
            "inv" => {
                want_arity(&toks, 2)?;
                invs.push((
                    want_usize(&toks[1])?,
                    want_usize(&toks[2])?,
                    head.line,
                    head.col,
                ));
            }
            "cmp" => {
                want_arity(&toks, 3)?;
                cmps.push((
                    want_usize(&toks[1])?,
                    want_usize(&toks[2])?,
                    want_usize(&toks[3])?,
                    head.line,
                    head.col,
                ));
            }
            other => {
                return Err(parse_err(
                    head.line,
                    head.col,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    if !saw_header {
        return Err(parse_err(1, 1, "empty file, expected `grpd 1` header"));
    }
    let n_objects = n_objects.ok_or_else(|| parse_err(1, 1, "missing `objects` line"))?;

    let n_mor = mors.len();
    let mut source = vec![usize::MAX; n_mor];
    let mut target = vec![usize::MAX; n_mor];
    for &(m, s, t, line, col) in &mors {
        if m >= n_mor {
            return Err(parse_err(
                line,
                col,
                format!("morphism ids must be dense 0..{n_mor}, found {m}"),
            ));
        }
        if source[m] != usize::MAX {
            return Err(parse_err(line, col, format!("duplicate morphism {m}")));
        }
        source[m] = s;
        target[m] = t;
    }
    let mut identity = vec![usize::MAX; n_objects];
    for &(u, m, line, col) in &ids {
        if u >= n_objects {
            return Err(parse_err(line, col, format!("object {u} out of range")));
        }
        if identity[u] != usize::MAX {
            return Err(parse_err(line, col, format!("duplicate identity for {u}")));
        }
        identity[u] = m;
    }
    if let Some(u) = identity.iter().position(|&m| m == usize::MAX) {
        return Err(parse_err(1, 1, format!("missing identity for object {u}")));
    }
    let mut inverse = vec![usize::MAX; n_mor];
    for &(m, i, line, col) in &invs {
        if m >= n_mor {
            return Err(parse_err(line, col, format!("morphism {m} out of range")));
        }
        if inverse[m] != usize::MAX {
            return Err(parse_err(line, col, format!("duplicate inverse for {m}")));
        }
        inverse[m] = i;
    }
    if let Some(m) = inverse.iter().position(|&i| i == usize::MAX) {
        return Err(parse_err(1, 1, format!("missing inverse for morphism {m}")));
    }
    let mut compose = vec![None; n_mor * n_mor];
    for &(b, a, c, line, col) in &cmps {
        if b >= n_mor || a >= n_mor {
            return Err(parse_err(line, col, "composition entry out of range"));
        }
        if compose[b * n_mor + a].is_some() {
            return Err(parse_err(
                line,
                col,
                format!("duplicate composition entry ({b}, {a})"),
            ));
        }
        compose[b * n_mor + a] = Some(c);
    }
    FiniteGroupoid::from_parts(n_objects, source, target, identity, inverse, compose)
}

pub fn serialize_grpd(g: &FiniteGroupoid) -> String {
    let mut s = String::new();
    s.push_str("grpd 1\n");
    s.push_str("# cmp b a c means c = b.a with a applied first\n");
    s.push_str(&format!("objects {}\n", g.n_objects()));
    for m in g.morphisms() {
        s.push_str(&format!("m {} {} {}\n", m, g.source(m), g.target(m)));
    }
    for u in g.objects() {
        s.push_str(&format!("id {} {}\n", u, g.identity(u)));
    }
    for m in g.morphisms() {
        s.push_str(&format!("inv {} {}\n", m, g.inverse(m)));
    }
    for b in g.morphisms() {
        for a in g.morphisms() {
            if let Some(c) = g.compose(b, a) {
                s.push_str(&format!("cmp {} {} {}\n", b, a, c));
            }
        }
    }
    s
}

// ---------------------------------------------------------------------------
// COMOR v1

enum Side {
    Dom,
    Cod,
}

pub fn parse_comor(text: &str, base_dir: &Path) -> Result<Comorphism> {
    let lines: Vec<&str> = text.lines().collect();
    let mut dom: Option<Arc<FiniteGroupoid>> = None;
    let mut cod: Option<Arc<FiniteGroupoid>> = None;
    let mut objs: Vec<(Ob, Ob, usize, usize)> = Vec::new();
    let mut lifts_raw: Vec<(Ob, Mor, Mor, usize, usize)> = Vec::new();
    let mut saw_header = false;

    let mut i = 0usize;
    while i < lines.len() {
        let lineno = i + 1;
        let toks = line_tokens(lines[i], lineno);
        i += 1;
        if toks.is_empty() {
            continue;
        }
        let head = &toks[0];
        if !saw_header {
            if head.text != "comor" {
                return Err(parse_err(head.line, head.col, "expected `comor 1` header"));
            }
            want_arity(&toks, 1)?;
            if toks[1].text != "1" {
                return Err(parse_err(toks[1].line, toks[1].col, "unsupported version"));
            }
            saw_header = true;
            continue;
        }
        match head.text {
            "dom" | "cod" => {
                let side = if head.text == "dom" { Side::Dom } else { Side::Cod };
                if toks.len() < 2 {
                    return Err(parse_err(head.line, head.col, "expected `file <path>` or `inline`"));
                }
                let g = match toks[1].text {
                    "file" => {
                        want_arity(&toks, 2)?;
                        let path = base_dir.join(toks[2].text);
                        let contents = std::fs::read_to_string(&path).map_err(|e| {
                            parse_err(
                                toks[2].line,
                                toks[2].col,
                                format!("cannot read {}: {e}", path.display()),
                            )
                        })?;
                        parse_grpd(&contents)?
                    }
                    "inline" => {
                        want_arity(&toks, 1)?;
                        let start = i;
                        let mut block = String::new();
                        loop {
                            if i >= lines.len() {
                                return Err(parse_err(
                                    head.line,
                                    head.col,
                                    "inline block not closed by `end`",
                                ));
                            }
                            let btoks = line_tokens(lines[i], i + 1);
                            if btoks.len() == 1 && btoks[0].text == "end" {
                                i += 1;
                                break;
                            }
                            block.push_str(lines[i]);
                            block.push('\n');
                            i += 1;
                        }
                        parse_grpd(&block).map_err(|e| match e {
                            Error::Parse { line, col, msg } => parse_err(line + start, col, msg),
                            other => other,
                        })?
                    }
                    other => {
                        return Err(parse_err(
                            toks[1].line,
                            toks[1].col,
                            format!("expected `file` or `inline`, found `{other}`"),
                        ));
                    }
                };
                let slot = match side {
                    Side::Dom => &mut dom,
                    Side::Cod => &mut cod,
                };
                if slot.replace(Arc::new(g)).is_some() {
                    return Err(parse_err(head.line, head.col, "duplicate groupoid block"));
                }
            }
            "obj" => {
                want_arity(&toks, 2)?;
                objs.push((
                    want_usize(&toks[1])?,
                    want_usize(&toks[2])?,
                    head.line,
                    head.col,
                ));
            }
            "lift" => {
                want_arity(&toks, 3)?;
                lifts_raw.push((
                    want_usize(&toks[1])?,
                    want_usize(&toks[2])?,
                    want_usize(&toks[3])?,
                    head.line,
                    head.col,
                ));
            }
            other => {
                return Err(parse_err(
                    head.line,
                    head.col,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    if !saw_header {
        return Err(parse_err(1, 1, "empty file, expected `comor 1` header"));
    }
    let dom = dom.ok_or_else(|| parse_err(1, 1, "missing `dom` block"))?;
    let cod = cod.ok_or_else(|| parse_err(1, 1, "missing `cod` block"))?;

    let mut object_map = vec![usize::MAX; cod.n_objects()];
    for &(u, w, line, col) in &objs {
        if u >= cod.n_objects() {
            return Err(parse_err(line, col, format!("object {u} out of range")));
        }
        if object_map[u] != usize::MAX {
            return Err(parse_err(line, col, format!("duplicate obj line for {u}")));
        }
        object_map[u] = w;
    }
    if let Some(u) = object_map.iter().position(|&w| w == usize::MAX) {
        return Err(parse_err(1, 1, format!("missing obj line for object {u}")));
    }
    let mut lifts: Vec<Vec<Mor>> = (0..cod.n_objects())
        .map(|u| vec![usize::MAX; dom.mors_from(object_map[u]).len()])
        .collect();
    for &(u, a, m, line, col) in &lifts_raw {
        if u >= cod.n_objects() || a >= dom.n_morphisms() {
            return Err(parse_err(line, col, "lift entry out of range"));
        }
        if dom.source(a) != object_map[u] {
            return Err(parse_err(
                line,
                col,
                format!("morphism {a} does not start at the image of object {u}"),
            ));
        }
        let slot = &mut lifts[u][dom.pos_in_from(a)];
        if *slot != usize::MAX {
            return Err(parse_err(line, col, format!("duplicate lift ({u}, {a})")));
        }
        *slot = m;
    }
    for u in cod.objects() {
        if let Some(k) = lifts[u].iter().position(|&m| m == usize::MAX) {
            let a = dom.mors_from(object_map[u])[k];
            return Err(parse_err(1, 1, format!("missing lift ({u}, {a})")));
        }
    }
    Comorphism::new(dom, cod, object_map, lifts)
}

pub fn serialize_comor(c: &Comorphism) -> String {
    let mut s = String::new();
    s.push_str("comor 1\n");
    s.push_str("dom inline\n");
    s.push_str(&serialize_grpd(c.dom()));
    s.push_str("end\n");
    s.push_str("cod inline\n");
    s.push_str(&serialize_grpd(c.cod()));
    s.push_str("end\n");
    for u in c.cod().objects() {
        s.push_str(&format!("obj {} {}\n", u, c.apply_ob(u)));
    }
    for u in c.cod().objects() {
        for &a in c.dom().mors_from(c.apply_ob(u)) {
            s.push_str(&format!("lift {} {} {}\n", u, a, c.lift(u, a)));
        }
    }
    s
}

// ---------------------------------------------------------------------------
// BIS v1

pub fn parse_bis(text: &str, carrier: &Arc<FiniteGroupoid>) -> Result<Bisection> {
    let mut components = vec![usize::MAX; carrier.n_objects()];
    let mut saw_header = false;
    for (i, raw) in text.lines().enumerate() {
        let toks = line_tokens(raw, i + 1);
        if toks.is_empty() {
            continue;
        }
        let head = &toks[0];
        if !saw_header {
            if head.text != "bis" {
                return Err(parse_err(head.line, head.col, "expected `bis 1` header"));
            }
            want_arity(&toks, 1)?;
            if toks[1].text != "1" {
                return Err(parse_err(toks[1].line, toks[1].col, "unsupported version"));
            }
            saw_header = true;
            continue;
        }
        if head.text != "c" {
            return Err(parse_err(
                head.line,
                head.col,
                format!("unknown directive `{}`", head.text),
            ));
        }
        want_arity(&toks, 2)?;
        let u = want_usize(&toks[1])?;
        let m = want_usize(&toks[2])?;
        if u >= carrier.n_objects() {
            return Err(parse_err(toks[1].line, toks[1].col, format!("object {u} out of range")));
        }
        if components[u] != usize::MAX {
            return Err(parse_err(head.line, head.col, format!("duplicate component for {u}")));
        }
        components[u] = m;
    }
    if !saw_header {
        return Err(parse_err(1, 1, "empty file, expected `bis 1` header"));
    }
    if let Some(u) = components.iter().position(|&m| m == usize::MAX) {
        return Err(parse_err(1, 1, format!("missing component for object {u}")));
    }
    Bisection::new(carrier.clone(), components)
}

pub fn serialize_bis(b: &Bisection) -> String {
    let mut s = String::new();
    s.push_str("bis 1\n");
    for (u, &m) in b.components().iter().enumerate() {
        s.push_str(&format!("c {u} {m}\n"));
    }
    s
}

// ---------------------------------------------------------------------------

pub fn load_groupoid(path: &Path) -> Result<Arc<FiniteGroupoid>> {
    let text = std::fs::read_to_string(path)?;
    Ok(Arc::new(parse_grpd(&text)?))
}

pub fn load_comorphism(path: &Path) -> Result<Comorphism> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_comor(&text, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    #[test]
    fn grpd_round_trip_is_identity_on_canonical_text() {
        for g in [
            FiniteGroupoid::discrete(3),
            FiniteGroupoid::indiscrete(2),
            FiniteGroupoid::sigma(&GroupTable::cyclic(3)),
            FiniteGroupoid::interval(),
        ] {
            let text = serialize_grpd(&g);
            let parsed = parse_grpd(&text).unwrap();
            assert_eq!(parsed, g);
            assert_eq!(serialize_grpd(&parsed), text);
        }
    }

    #[test]
    fn grpd_parser_reports_positions() {
        let err = parse_grpd("grpd 1\nobjects x\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!((line, col), (2, 9));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn grpd_parser_accepts_comments_and_blank_lines() {
        let g = FiniteGroupoid::discrete(2);
        let text = format!("# leading comment\n\n{}# trailing\n", serialize_grpd(&g));
        assert_eq!(parse_grpd(&text).unwrap(), g);
    }

    #[test]
    fn comor_round_trip() {
        let g = Arc::new(FiniteGroupoid::sigma(&GroupTable::cyclic(2)));
        let id = Comorphism::identity(&g);
        let text = serialize_comor(&id);
        let parsed = parse_comor(&text, Path::new(".")).unwrap();
        assert_eq!(parsed, id);
        assert_eq!(serialize_comor(&parsed), text);
    }

    #[test]
    fn bis_round_trip() {
        let g = Arc::new(FiniteGroupoid::indiscrete(2));
        let b = Bisection::new(g.clone(), vec![1, 2]).unwrap();
        let text = serialize_bis(&b);
        assert_eq!(parse_bis(&text, &g).unwrap(), b);
    }
}
