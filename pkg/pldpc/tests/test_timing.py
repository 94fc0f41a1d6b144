import io

import numpy as np
from django.test import SimpleTestCase

from pldpc.coding.construction import default_code
from pldpc.coding.exceptions import ArchitectureError, ScheduleConflictError
from pldpc.coding.oracles import cpm_permutation, is_bijection
from pldpc.coding.quantization import S1
from pldpc.coding.timing import (
    ArchConfig, Bank, Case, CodeDimensions, TRACE_HEADER, classify_case, codeword_latency_and_throughput,
    d1h_address, evaluate_timing, fifo_peak, hex_address, layer_latency, potential_multi_codeword_throughput,
    pvn_address, ram_banks, shift_amount, shifter_permutation, simulate_schedule, storage_to_code_hcn,
    timing_row, write_trace_csv,
)

FULL_SIZE = CodeDimensions(7, 11, 32, 512, 4)


def synthetic(r, G, N_h=4):
    return CodeDimensions(2, 10, 1, G * N_h, r), ArchConfig(G * N_h, N_h)


class ArchConfigTests(SimpleTestCase):

    def test_groups(self):
        self.assertEqual(ArchConfig(512, 128).G, 4)
        self.assertEqual(ArchConfig(512, 64).G, 8)

    def test_invalid(self):
        for kwargs in ({'N_h': 100}, {'N_h': 1024}, {'N_h': 0}, {'N_h': 64, 'f_c': 0},
                       {'N_h': 64, 'iterations': 0}, {'N_h': 64, 't_delta': -1}):
            with self.assertRaises(ArchitectureError):
                ArchConfig(512, **kwargs)


class ClosedFormTests(SimpleTestCase):

    def test_case_boundary(self):
        self.assertIs(classify_case(4, 4), Case.I)
        self.assertIs(classify_case(4, 8), Case.II)
        self.assertIs(classify_case(2, 3), Case.I)
        self.assertIs(classify_case(2, 4), Case.II)

    def test_layer_latency(self):
        self.assertEqual(layer_latency(4, 4), 24)
        self.assertEqual(layer_latency(4, 8), 48)
        self.assertEqual(layer_latency(2, 1), 9)
        with self.assertRaises(ArchitectureError):
            layer_latency(4, 8, Case.I)

    def test_fifo_peak(self):
        self.assertEqual(fifo_peak(4, 4), 0)
        self.assertEqual(fifo_peak(4, 8), 4)
        self.assertEqual(fifo_peak(2, 16), 13)
        self.assertEqual(fifo_peak(4, 16), 12)

    def test_codeword_length(self):
        self.assertEqual(FULL_SIZE.codeword_length, 1327104)
        self.assertEqual(FULL_SIZE.num_layers, 224)


class ReferenceTimingTests(SimpleTestCase):
    """Latência e vazão do código completo a 130 MHz com t_δ = 2."""

    EXPECTED = {
        (128, 20): (0.896, 1.48),
        (64, 20): (1.72, 0.77),
        (128, 150): (6.72, 0.20),
        (64, 150): (12.92, 0.10),
    }

    def test_latency_and_throughput(self):
        for (N_h, iterations), (ms, gbps) in self.EXPECTED.items():
            latency, throughput = codeword_latency_and_throughput(FULL_SIZE, ArchConfig(512, N_h, iterations=iterations))
            self.assertEqual(float(f'{latency * 1e3:.3g}'), float(f'{ms:.3g}'))
            self.assertEqual(round(throughput / 1e9, 2), gbps)

    def test_table_rows(self):
        arch = ArchConfig(512, 128)
        figures = evaluate_timing(FULL_SIZE, arch)
        self.assertEqual(timing_row('Nh128-I20', arch, figures), ('Nh128-I20', 128, 4, 'I', 24, 20, '0.896', '1.48'))
        arch = ArchConfig(512, 64)
        row = timing_row('Nh64-I20', arch, evaluate_timing(FULL_SIZE, arch))
        self.assertEqual(row[3:6], ('II', 48, 20))
        self.assertEqual(row[7], '0.77')

    def test_multi_codeword_figure(self):
        arch = ArchConfig(512, 128)
        single = evaluate_timing(FULL_SIZE, arch).throughput
        self.assertAlmostEqual(potential_multi_codeword_throughput(FULL_SIZE, arch), 3 * single)

    def test_z2_mismatch(self):
        with self.assertRaises(ArchitectureError):
            evaluate_timing(FULL_SIZE, ArchConfig(256, 64))


class AddressMapTests(SimpleTestCase):

    def test_pvn_map_is_a_bijection(self):
        z2, N_h = 16, 4
        G = z2 // N_h
        values = [pvn_address(g, l, G, z2) for g in range(3 * 2 * G) for l in range(N_h)]
        self.assertTrue(is_bijection(values, 3 * 2 * z2))

    def test_hex_map_covers_every_edge_once(self):
        N_h, d, G = 4, 6, 4
        edges = [hex_address(q, l, d, N_h) for q in range(d * G) for l in range(N_h)]
        self.assertEqual(len(set(edges)), N_h * G * d)
        self.assertEqual(hex_address(7, 2, 6, 4), (6, 1))

    def test_d1h_map_is_a_bijection(self):
        values = [d1h_address(w, l, 4, depth=16) for w in range(16) for l in range(4)]
        self.assertTrue(is_bijection(values, 64))

    def test_depth_is_checked(self):
        with self.assertRaises(ArchitectureError):
            d1h_address(16, 0, 4, depth=16)
        with self.assertRaises(ArchitectureError):
            pvn_address(0, 4, 4, 16)

    def test_storage_order_is_a_permutation_of_hcns(self):
        G, N_h = 4, 8
        values = [storage_to_code_hcn(a, G, N_h) for a in range(3 * G * N_h)]
        self.assertTrue(is_bijection(values, 3 * G * N_h))
        # group c, lane l of layer 0 holds H-CN l·G + c
        self.assertEqual(storage_to_code_hcn(1 * N_h + 2, G, N_h), 2 * G + 1)


class CyclicShifterTests(SimpleTestCase):

    def test_worked_example(self):
        # p = 9, z2 = 16, N_h = 4: G = 4, 9 = 2·4 + 1
        self.assertEqual(shift_amount(9, 0, 4, 4), 3)
        self.assertEqual(shift_amount(9, 1, 4, 4), 2)
        self.assertEqual(shift_amount(9, 3, 4, 4), 2)
        np.testing.assert_array_equal(shifter_permutation(9, 16, 4), cpm_permutation(9, 16))

    def test_every_offset(self):
        for z2, N_h in ((16, 4), (16, 16), (64, 8), (64, 16), (64, 1)):
            for p in range(z2):
                np.testing.assert_array_equal(shifter_permutation(p, z2, N_h), cpm_permutation(p, z2))

    def test_offset_out_of_range(self):
        with self.assertRaises(ArchitectureError):
            shift_amount(16, 0, 4, 4)


class ScheduleTests(SimpleTestCase):

    def test_case_one_milestones(self):
        report = simulate_schedule(*synthetic(4, 4))
        self.assertEqual(report.load_complete, [3, 6, 9, 12])
        self.assertEqual(report.output_ready, [12, 15, 18, 21])
        self.assertEqual(report.total_cycles, 24)
        self.assertEqual((report.t_loading, report.t_first_output), (12, 12))
        self.assertIs(report.case, Case.I)
        self.assertEqual(report.fifo_peak, 0)
        self.assertEqual(report.conflicts, [])

    def test_closed_forms_hold(self):
        for r in (2, 4, 6, 8):
            for G in (1, 2, 4, 8, 16):
                report = simulate_schedule(*synthetic(r, G))
                self.assertEqual(report.total_cycles, layer_latency(r, G), (r, G))
                self.assertEqual(report.conflicts, [], (r, G))

    def test_case_two_fifo_occupancy(self):
        for r, G in ((4, 8), (2, 16), (4, 16)):
            report = simulate_schedule(*synthetic(r, G))
            self.assertIs(report.case, Case.II)
            self.assertEqual(report.fifo_peak, fifo_peak(r, G))

    def test_lifted_code_has_no_conflicts(self):
        code = default_code(4, 16, seed=0)
        arch = ArchConfig(16, 4)
        for k in (0, 9, code.num_layers - 1):
            for iteration in (0, 1):
                report = simulate_schedule(code, arch, k=k, iteration=iteration, incoming_d1h_writes=True)
                self.assertEqual(report.check().conflicts, [])
                self.assertEqual(report.total_cycles, 24)

    def test_first_iteration_reads_channel_bank(self):
        code = default_code(4, 16, seed=0)
        report = simulate_schedule(code, ArchConfig(16, 4), k=0)
        banks = {a.bank for record in report.trace for a in record.accesses if a.op == 'read'}
        self.assertIn(Bank.PVN_CH, banks)
        later = simulate_schedule(code, ArchConfig(16, 4), k=0, iteration=1)
        banks = {a.bank for record in later.trace for a in record.accesses if a.op == 'read'}
        self.assertNotIn(Bank.PVN_CH, banks)

    def test_reads_follow_the_lifted_layer(self):
        code = default_code(4, 16, seed=0)
        arch = ArchConfig(16, 4)
        k, G, z2 = 5, arch.G, code.z2
        view = code.layer_view(k)
        report = simulate_schedule(code, arch, k=k, iteration=1)
        self.assertFalse(report.synthetic_layer)
        for g in range(G):
            reads = [a for record in report.trace for a in record.accesses
                     if a.op == 'read' and a.bank is Bank.PVN_APP and a.group == g]
            expected = [view.columns[delta] * G + (g + view.shifts[delta]) % G for delta in range(code.d)]
            self.assertEqual([a.address for a in reads], expected)

            hcns = report.group_hcns(g)
            self.assertEqual(hcns, list(range(k * z2 + g, (k + 1) * z2, G)))
            for delta in range(code.d):
                delivered = shifter_permutation(view.shifts[delta], z2, arch.N_h)
                for alpha in hcns:
                    beta = int(code.pvn_neighbors[alpha][delta])
                    self.assertEqual(delivered[alpha - k * z2], beta - view.columns[delta] * z2)

    def test_bare_dimensions_use_a_synthetic_layer(self):
        report = simulate_schedule(*synthetic(4, 4))
        self.assertTrue(report.synthetic_layer)
        self.assertEqual(report.group_hcns(1), [1, 5, 9, 13])

    def test_single_port_rams_conflict(self):
        dims, _ = synthetic(4, 4)
        report = simulate_schedule(dims, ArchConfig(16, 4, ports=1))
        self.assertTrue(report.conflicts)
        with self.assertRaises(ScheduleConflictError) as ctx:
            report.check()
        self.assertEqual(ctx.exception.conflicts, report.conflicts)

    def test_layer_out_of_range(self):
        with self.assertRaises(ArchitectureError):
            simulate_schedule(*synthetic(4, 4), k=2)

    def test_trace_csv(self):
        stream = io.StringIO()
        write_trace_csv(stream, simulate_schedule(*synthetic(4, 4)))
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], ','.join(TRACE_HEADER))
        self.assertTrue(lines[1].startswith('1,'))


class RamBankTests(SimpleTestCase):

    def test_bank_sizes(self):
        banks = ram_banks(FULL_SIZE, ArchConfig(512, 128), S1)
        self.assertEqual(banks[Bank.PVN_CH].depth, 11 * 32 * 4)
        self.assertEqual(banks[Bank.H_EX].depth, 6 * 224 * 4)
        self.assertEqual(banks[Bank.D1H_CH].depth, 2 * 224 * 4)
        self.assertEqual(banks[Bank.D1H_CH].width, 70)
        self.assertEqual(banks[Bank.PVN_APP].bits, 128 * 11 * 32 * 4 * S1.app.width)
