// Client-side shape check for receipt numbers so obviously malformed input
// gets a hint before any request is made.  The server remains the
// authority on whether a nota exists.

const NOTA_PATTERN = /^RKU-\d{8}-\d{4}$/;

export function isWellFormedNota(text: string): boolean {
  return NOTA_PATTERN.test(text.trim());
}

export function notaFormatHint(text: string): string | null {
  if (text.trim() === "" || isWellFormedNota(text)) {
    return null;
  }
  return "Nota numbers look like RKU-20160520-0001";
}
