import { createHash } from 'crypto';

/**
 * Checksum of a plotted series: sha256 over the raw CSV cells joined by LF.
 *
 * The renderer hashes exactly the strings it read from the CSV, so a match
 * against a checksum computed from the file proves the plot layer did not
 * transform the data.
 */
export function seriesChecksum(cells: string[]): string {
  return createHash('sha256').update(cells.join('\n'), 'utf8').digest('hex');
}
