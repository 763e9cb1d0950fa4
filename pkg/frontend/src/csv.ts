import { readFileSync } from 'fs';

export interface CsvTable {
  header: string[];
  rows: string[][];
}

/** Parse a carrylab CSV: plain comma separation, LF lines, no quoting. */
export function parseCsv(text: string): CsvTable {
  const lines = text.split('\n').filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error('empty CSV: no header');
  }
  const header = lines[0].split(',');
  const rows = lines.slice(1).map((line) => line.split(','));
  if (rows.length === 0) {
    throw new Error('empty CSV body: nothing to plot');
  }
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new Error(`ragged CSV row: expected ${header.length} cells, got ${row.length}`);
    }
  }
  return { header, rows };
}

export function readCsv(path: string): CsvTable {
  return parseCsv(readFileSync(path, 'utf8'));
}

/** Raw string cells of one column; fails fast when the column is missing. */
export function column(table: CsvTable, name: string): string[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column '${name}' (header: ${table.header.join(',')})`);
  }
  return table.rows.map((row) => row[idx]);
}

export function numericColumn(table: CsvTable, name: string): number[] {
  return column(table, name).map((cell, i) => {
    const value = Number(cell);
    if (cell === '' || Number.isNaN(value)) {
      throw new Error(`non-numeric cell in column '${name}' at row ${i + 1}: '${cell}'`);
    }
    return value;
  });
}
