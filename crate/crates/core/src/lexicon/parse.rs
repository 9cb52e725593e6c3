use super::{Feature, LexEntry, Lexicon, LexiconError, Unit, DIC_EN_XVII, MEANING, MODERN_FORM, SPELLING};

/// Parses a whole dictionary file. Blank lines and `#` comments are skipped.
pub fn parse_lexicon(text: &str, origin: &str) -> Result<Lexicon, LexiconError> {
    let mut lexicon = Lexicon::new(origin);
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end();
        if line.trim_start().is_empty() || line.starts_with('#') {
            continue;
        }
        let entry = LineParser::new(line, origin, line_no).entry()?;
        validate(&entry, origin, line_no)?;
        lexicon.insert(entry, line_no)?;
    }
    Ok(lexicon)
}

/// Canonical single-line form of an entry.
pub fn format_entry(entry: &LexEntry) -> String {
    let mut out = entry.surface.clone();
    out.push(',');
    match &entry.expansion {
        Some(units) => {
            let rendered: Vec<String> = units.iter().map(format_unit).collect();
            out.push_str(&rendered.join(" "));
        }
        None => {
            if entry.lemma != entry.surface {
                out.push_str(&entry.lemma);
                out.push(',');
            }
            out.push_str(&entry.pos);
        }
    }
    push_features(&mut out, &entry.features);
    out
}

fn format_unit(unit: &Unit) -> String {
    let mut out = String::from("<");
    out.push_str(&unit.form);
    out.push(',');
    if let Some(lemma) = unit.lemma.as_ref().filter(|l| **l != unit.form) {
        out.push_str(lemma);
        out.push(',');
    }
    out.push_str(&unit.pos);
    push_features(&mut out, &unit.features);
    out.push('>');
    out
}

fn push_features(out: &mut String, features: &[Feature]) {
    for f in features {
        out.push_str(&f.to_string());
    }
}

fn validate(entry: &LexEntry, origin: &str, line: usize) -> Result<(), LexiconError> {
    let fail = |reason: &str| LexiconError::Validation {
        origin: origin.to_string(),
        line,
        reason: reason.to_string(),
    };
    if !entry.is_xvii() {
        return Ok(());
    }
    let spelling = entry.has_feature(SPELLING);
    let meaning = entry.has_feature(MEANING);
    if spelling == meaning {
        return Err(fail("Dic_EN_XVII entry needs exactly one of +spelling or +meaning"));
    }
    if entry.feature_value(MODERN_FORM).is_none() {
        return Err(fail("Dic_EN_XVII entry lacks an EN=<modern form> feature"));
    }
    debug_assert!(entry.has_feature(DIC_EN_XVII));
    Ok(())
}

struct LineParser<'a> {
    chars: Vec<char>,
    pos: usize,
    origin: &'a str,
    line: usize,
}

impl<'a> LineParser<'a> {
    fn new(text: &str, origin: &'a str, line: usize) -> Self {
        LineParser {
            chars: text.chars().collect(),
            pos: 0,
            origin,
            line,
        }
    }

    fn error(&self, reason: impl Into<String>) -> LexiconError {
        LexiconError::Parse {
            origin: self.origin.to_string(),
            line: self.line,
            column: self.pos + 1,
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_spaces(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
    }

    fn take_until(&mut self, stop: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if stop(c) {
                break;
            }
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn entry(mut self) -> Result<LexEntry, LexiconError> {
        let surface = self.take_until(|c| c == ',');
        if surface.trim().is_empty() {
            self.pos = 0;
            return Err(self.error("empty surface"));
        }
        if surface != surface.trim() {
            return Err(self.error("surface has leading or trailing whitespace"));
        }
        if surface.contains(['<', '>']) {
            return Err(self.error("`<` or `>` in surface"));
        }
        if self.peek() != Some(',') {
            return Err(self.error("expected `,` after surface"));
        }
        self.pos += 1;
        self.skip_spaces();

        let mut entry = LexEntry::new(&surface, &surface, "", self.origin);
        if self.peek() == Some('<') {
            let mut units = vec![self.unit()?];
            loop {
                self.skip_spaces();
                if self.peek() == Some('<') {
                    units.push(self.unit()?);
                } else {
                    break;
                }
            }
            entry.expansion = Some(units);
        } else {
            let (lemma, pos) = self.lemma_and_pos(None)?;
            entry.lemma = lemma.unwrap_or(surface);
            entry.pos = pos;
        }
        entry.features = self.features(None)?;
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected `{c}`")));
        }
        Ok(entry)
    }

    fn unit(&mut self) -> Result<Unit, LexiconError> {
        let open = self.pos;
        self.pos += 1;
        let form = self.take_until(|c| matches!(c, ',' | '>' | '<'));
        if form.is_empty() {
            return Err(self.error("empty unit form"));
        }
        if self.peek() != Some(',') {
            if self.peek().is_none() {
                self.pos = open;
                return Err(self.error("unclosed `<`"));
            }
            return Err(self.error("expected `,` after unit form"));
        }
        self.pos += 1;
        let (lemma, pos) = self.lemma_and_pos(Some('>'))?;
        let features = self.features(Some('>'))?;
        if self.peek() != Some('>') {
            if self.peek().is_none() {
                self.pos = open;
                return Err(self.error("unclosed `<`"));
            }
            return Err(self.error("expected `>`"));
        }
        self.pos += 1;
        Ok(Unit {
            lemma: lemma.filter(|l| *l != form),
            form,
            pos,
            features,
        })
    }

    fn lemma_and_pos(&mut self, close: Option<char>) -> Result<(Option<String>, String), LexiconError> {
        let stop = |c: char| c == ',' || c == '+' || Some(c) == close;
        let first = self.take_until(stop);
        let (lemma, pos_start, pos) = if self.peek() == Some(',') {
            if first.is_empty() {
                return Err(self.error("empty lemma"));
            }
            self.pos += 1;
            let start = self.pos;
            (Some(first), start, self.take_until(stop))
        } else {
            (None, self.pos - first.chars().count(), first)
        };
        if pos.is_empty() {
            return Err(self.error("missing part of speech"));
        }
        if let Some(bad) = pos.chars().position(|c| !(c.is_alphanumeric() || c == '_')) {
            self.pos = pos_start + bad;
            return Err(self.error("malformed part of speech"));
        }
        if self.peek() == Some(',') {
            return Err(self.error("too many `,`-separated fields"));
        }
        Ok((lemma, pos))
    }

    fn features(&mut self, close: Option<char>) -> Result<Vec<Feature>, LexiconError> {
        let mut out = Vec::new();
        self.skip_spaces();
        while self.peek() == Some('+') {
            self.pos += 1;
            let name = self.take_until(|c| matches!(c, '+' | '=' | ',' | '<' | '>') || c.is_whitespace());
            if name.is_empty() {
                return Err(self.error("malformed tag: empty feature name"));
            }
            let value = if self.peek() == Some('=') {
                self.pos += 1;
                let value = self.take_until(|c| matches!(c, '+' | ',' | '<' | '>'));
                let value = match close {
                    None => value.trim_end().to_string(),
                    Some(_) => value,
                };
                if value.trim().is_empty() {
                    return Err(self.error(format!("malformed tag: empty value for `{name}`")));
                }
                Some(value)
            } else {
                None
            };
            out.push(Feature { name, value });
            if close.is_none() {
                self.skip_spaces();
            }
        }
        Ok(out)
    }
}
