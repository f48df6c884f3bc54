/**
 * Lifetime energy combination, the single piece of arithmetic this UI is
 * allowed to do itself: embodied total plus `years` of annual operating
 * energy, both in Btu. Every other number on screen is echoed verbatim
 * from the engine payload.
 */
export function lifetimeTotalBtu(
  eeBtu: number,
  annualOperatingBtu: number,
  years: number,
): number {
  if (years < 0 || !Number.isFinite(years)) {
    throw new RangeError(`years must be a finite value >= 0, got ${years}`);
  }
  return eeBtu + years * annualOperatingBtu;
}
