// Reader for the relaxed structured-text form scripts are written in:
// JSON-like, but keys may be bare identifiers, commas are optional, and
// trailing commas are ignored. Errors report line:column positions.

export class SyntaxDiagnostic extends Error {
  constructor(
    message: string,
    public line: number,
    public col: number,
  ) {
    super(`${line}:${col}: ${message}`);
  }
}

export type DocValue =
  | string
  | number
  | boolean
  | DocValue[]
  | { [key: string]: DocValue };

type TokenKind =
  | "{"
  | "}"
  | "["
  | "]"
  | ":"
  | ","
  | "string"
  | "ident"
  | "number"
  | "eof";

interface Token {
  kind: TokenKind;
  value: string | number | boolean | null;
  line: number;
  col: number;
}

const PUNCT = "{}[]:,";
const ESCAPES: Record<string, string> = { n: "\n", t: "\t", '"': '"', "\\": "\\" };

const isDigit = (ch: string): boolean => ch >= "0" && ch <= "9";
const isIdentStart = (ch: string): boolean => /[A-Za-z_]/.test(ch);
const isIdentPart = (ch: string): boolean => /[A-Za-z0-9_]/.test(ch);
const isNumberPart = (ch: string): boolean => isDigit(ch) || "+-.eE".includes(ch);

const tokenize = (text: string): Token[] => {
  const tokens: Token[] = [];
  let i = 0;
  let line = 1;
  let col = 1;
  const n = text.length;
  while (i < n) {
    const ch = text[i];
    if (ch === "\n") {
      i += 1;
      line += 1;
      col = 1;
      continue;
    }
    if (ch === " " || ch === "\t" || ch === "\r") {
      i += 1;
      col += 1;
      continue;
    }
    if (ch === "/" && text.slice(i, i + 2) === "//") {
      while (i < n && text[i] !== "\n") i += 1;
      continue;
    }
    if (ch === "#") {
      while (i < n && text[i] !== "\n") i += 1;
      continue;
    }
    const startLine = line;
    const startCol = col;
    if (PUNCT.includes(ch)) {
      tokens.push({ kind: ch as TokenKind, value: ch, line, col });
      i += 1;
      col += 1;
      continue;
    }
    if (ch === '"') {
      let j = i + 1;
      const buf: string[] = [];
      while (j < n && text[j] !== '"') {
        if (text[j] === "\n") {
          throw new SyntaxDiagnostic("unterminated string", startLine, startCol);
        }
        if (text[j] === "\\" && j + 1 < n) {
          const esc = text[j + 1];
          buf.push(ESCAPES[esc] ?? esc);
          j += 2;
        } else {
          buf.push(text[j]);
          j += 1;
        }
      }
      if (j >= n) {
        throw new SyntaxDiagnostic("unterminated string", startLine, startCol);
      }
      tokens.push({ kind: "string", value: buf.join(""), line: startLine, col: startCol });
      col += j + 1 - i;
      i = j + 1;
      continue;
    }
    if (
      isDigit(ch) ||
      ("+-.".includes(ch) && i + 1 < n && (isDigit(text[i + 1]) || text[i + 1] === "."))
    ) {
      let j = i;
      while (j < n && isNumberPart(text[j])) j += 1;
      const raw = text.slice(i, j);
      const value = Number(raw);
      if (Number.isNaN(value)) {
        throw new SyntaxDiagnostic(`bad number '${raw}'`, startLine, startCol);
      }
      tokens.push({ kind: "number", value, line: startLine, col: startCol });
      col += j - i;
      i = j;
      continue;
    }
    if (isIdentStart(ch)) {
      let j = i;
      while (j < n && isIdentPart(text[j])) j += 1;
      const word = text.slice(i, j);
      if (word === "true" || word === "false") {
        tokens.push({ kind: "number", value: word === "true", line: startLine, col: startCol });
      } else {
        tokens.push({ kind: "ident", value: word, line: startLine, col: startCol });
      }
      col += j - i;
      i = j;
      continue;
    }
    throw new SyntaxDiagnostic(`unexpected character '${ch}'`, line, col);
  }
  tokens.push({ kind: "eof", value: null, line, col });
  return tokens;
};

class Reader {
  private pos = 0;

  constructor(private tokens: Token[]) {}

  peek(): Token {
    return this.tokens[this.pos];
  }

  next(): Token {
    return this.tokens[this.pos++];
  }

  skipCommas(): void {
    while (this.peek().kind === ",") this.next();
  }

  value(): DocValue {
    const tok = this.peek();
    if (tok.kind === "{") return this.obj();
    if (tok.kind === "[") return this.arr();
    if (tok.kind === "string" || tok.kind === "number" || tok.kind === "ident") {
      return this.next().value as DocValue;
    }
    throw new SyntaxDiagnostic(`expected a value, got '${tok.kind}'`, tok.line, tok.col);
  }

  obj(): { [key: string]: DocValue } {
    this.next(); // {
    const out: { [key: string]: DocValue } = {};
    for (;;) {
      this.skipCommas();
      const tok = this.peek();
      if (tok.kind === "}") {
        this.next();
        return out;
      }
      if (tok.kind !== "ident" && tok.kind !== "string") {
        throw new SyntaxDiagnostic(`expected object key, got '${tok.kind}'`, tok.line, tok.col);
      }
      const key = String(this.next().value);
      const colon = this.next();
      if (colon.kind !== ":") {
        throw new SyntaxDiagnostic("expected ':' after object key", colon.line, colon.col);
      }
      out[key] = this.value();
    }
  }

  arr(): DocValue[] {
    this.next(); // [
    const out: DocValue[] = [];
    for (;;) {
      this.skipCommas();
      const tok = this.peek();
      if (tok.kind === "]") {
        this.next();
        return out;
      }
      out.push(this.value());
    }
  }
}

export const readDocument = (text: string): DocValue => {
  const reader = new Reader(tokenize(text));
  const value = reader.value();
  const tail = reader.peek();
  if (tail.kind !== "eof") {
    throw new SyntaxDiagnostic("trailing content after document", tail.line, tail.col);
  }
  return value;
};
