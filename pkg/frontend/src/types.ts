/** Wire types mirroring the engine's json result documents. */

export interface MonthlyRow {
  month: number;
  heating_kwh: number;
  cooling_kwh: number;
}

export interface AnnualBlock {
  heating_kwh: number;
  cooling_kwh: number;
  total_kwh: number;
  operating_btu: number;
}

export interface EeBlock {
  per_material: Record<string, number>;
  per_surface: Record<string, number>;
  per_assembly: Record<string, number>;
  total_mj: number;
  total_btu: number;
  ew_liters: number;
}

export interface RunResult {
  label: string;
  monthly: MonthlyRow[];
  annual: AnnualBlock;
  ee: EeBlock;
  lifespan_years: number;
  lifetime_total_btu: number;
  warnings: string[];
}

export interface RunsResponse {
  id: string;
  results: RunResult[];
}

export interface LayerDraft {
  material: string;
  thickness_m: number;
}

export interface SubstitutionDraft {
  construction_id: string;
  layers: LayerDraft[];
}

export interface PlanDraft {
  label: string;
  substitutions: SubstitutionDraft[];
}

export interface SettingsForm {
  alpha?: number;
  heat_setpoint?: number;
  cool_setpoint?: number;
  terrain?: "open" | "suburban" | "urban";
  protocol?: "hourly" | "alt-days";
}

export type AggregationLevel =
  | "building"
  | "per_assembly"
  | "per_surface"
  | "per_material";
