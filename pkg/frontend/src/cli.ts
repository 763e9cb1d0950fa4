#!/usr/bin/env node
import { parseArgs } from 'util';

import { render, Preset } from './render.js';

const USAGE =
  'usage: carrylab-plot --input <csv> --output <svg> --preset figure1|density|chain [--title <text>]';

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        input: { type: 'string' },
        output: { type: 'string' },
        preset: { type: 'string' },
        title: { type: 'string' },
      },
    });
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n${USAGE}\n`);
    return 2;
  }
  const { input, output, preset, title } = parsed.values;
  if (!input || !output || !preset) {
    process.stderr.write(`${USAGE}\n`);
    return 2;
  }
  if (preset !== 'figure1' && preset !== 'density' && preset !== 'chain') {
    process.stderr.write(`unknown preset '${preset}'\n${USAGE}\n`);
    return 2;
  }
  try {
    const result = render({ inputCsv: input, output, preset: preset as Preset, title });
    process.stdout.write(JSON.stringify(result, null, 2) + '\n');
    return 0;
  } catch (err) {
    process.stderr.write(`carrylab-plot: ${(err as Error).message}\n`);
    return 1;
  }
}

process.exitCode = main(process.argv.slice(2));
