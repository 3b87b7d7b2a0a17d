# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled cycle kernel.

State lives in flat C arrays; one step() call runs the same four phases as
the pure-Python backend (fire, leak, deliver, settle). The delivery ring
keeps one growable slot per (cycle mod slots) with at most one entry per
synapse per slot. advance() iterates cycles entirely in C for long runs.
"""

from libc.stdlib cimport calloc, free, malloc, realloc
from libc.string cimport memcpy

from .events import CycleReport

cdef int PH_STD = 0
cdef int PH_ABS = 1
cdef int PH_REL = 2


cdef struct Slot:
    int* data
    int size
    int cap


cdef inline void slot_push(Slot* s, int value) nogil:
    cdef int* grown
    if s.size == s.cap:
        s.cap = 8 if s.cap == 0 else s.cap * 2
        grown = <int*>realloc(s.data, s.cap * sizeof(int))
        s.data = grown
    s.data[s.size] = value
    s.size += 1


cdef class Kernel:
    cdef:
        int n, n_syn, slots, table_len
        bint stdp_enabled
        long long input_amount, weight_lo, weight_hi
        long long cycle

        long long* threshold
        long long* std_rest
        long long* ref_rest
        int* abs_ref
        int* rel_ref
        long long* leak

        int* syn_pre
        int* syn_post
        long long* syn_weight
        int* syn_delay
        long long* syn_last_delivery   # -1 when never delivered
        char* syn_delivered

        # CSR adjacency
        int* out_start
        int* out_list
        int* pre_start
        int* pre_list

        long long* table

        long long* acc
        int* phase
        int* phase_left
        char* pending
        long long* last_exceed         # -1 when never exceeded
        char* got_delivery

        Slot* ring
        int* fired_buf
        int fired_count

        # stimulus events sorted by cycle
        int n_events, ev_cursor
        long long* ev_cycle
        int* ev_neuron
        char* ev_is_inj
        long long* ev_value

        object names

    def __cinit__(self, names, threshold, std_rest, ref_rest, abs_ref, rel_ref,
                  leak, syn_pre, syn_post, syn_weight, syn_delay,
                  out_synapses, pre_synapses, events, ring_slots,
                  input_amount, stdp_enabled, table, weight_lo, weight_hi):
        cdef int i, j, k, total
        self.names = list(names)
        self.n = len(names)
        self.n_syn = len(syn_pre)
        self.slots = ring_slots
        self.cycle = 0
        self.input_amount = input_amount
        self.stdp_enabled = 1 if stdp_enabled else 0
        self.table_len = len(table)
        self.weight_lo = weight_lo
        self.weight_hi = weight_hi

        self.threshold = <long long*>malloc(self.n * sizeof(long long))
        self.std_rest = <long long*>malloc(self.n * sizeof(long long))
        self.ref_rest = <long long*>malloc(self.n * sizeof(long long))
        self.abs_ref = <int*>malloc(self.n * sizeof(int))
        self.rel_ref = <int*>malloc(self.n * sizeof(int))
        self.leak = <long long*>malloc(self.n * sizeof(long long))
        self.acc = <long long*>malloc(self.n * sizeof(long long))
        self.phase = <int*>calloc(self.n, sizeof(int))
        self.phase_left = <int*>calloc(self.n, sizeof(int))
        self.pending = <char*>calloc(self.n, 1)
        self.last_exceed = <long long*>malloc(self.n * sizeof(long long))
        self.got_delivery = <char*>calloc(self.n, 1)
        self.fired_buf = <int*>malloc(self.n * sizeof(int))
        self.fired_count = 0
        for i in range(self.n):
            self.threshold[i] = threshold[i]
            self.std_rest[i] = std_rest[i]
            self.ref_rest[i] = ref_rest[i]
            self.abs_ref[i] = abs_ref[i]
            self.rel_ref[i] = rel_ref[i]
            self.leak[i] = leak[i]
            self.acc[i] = std_rest[i]
            self.last_exceed[i] = -1

        self.syn_pre = <int*>malloc(self.n_syn * sizeof(int))
        self.syn_post = <int*>malloc(self.n_syn * sizeof(int))
        self.syn_weight = <long long*>malloc(self.n_syn * sizeof(long long))
        self.syn_delay = <int*>malloc(self.n_syn * sizeof(int))
        self.syn_last_delivery = <long long*>malloc(self.n_syn * sizeof(long long))
        self.syn_delivered = <char*>calloc(self.n_syn if self.n_syn else 1, 1)
        for j in range(self.n_syn):
            self.syn_pre[j] = syn_pre[j]
            self.syn_post[j] = syn_post[j]
            self.syn_weight[j] = syn_weight[j]
            self.syn_delay[j] = syn_delay[j]
            self.syn_last_delivery[j] = -1

        self.out_start = <int*>malloc((self.n + 1) * sizeof(int))
        self.pre_start = <int*>malloc((self.n + 1) * sizeof(int))
        self.out_list = <int*>malloc((self.n_syn if self.n_syn else 1) * sizeof(int))
        self.pre_list = <int*>malloc((self.n_syn if self.n_syn else 1) * sizeof(int))
        total = 0
        for i in range(self.n):
            self.out_start[i] = total
            for j in out_synapses[i]:
                self.out_list[total] = j
                total += 1
        self.out_start[self.n] = total
        total = 0
        for i in range(self.n):
            self.pre_start[i] = total
            for j in pre_synapses[i]:
                self.pre_list[total] = j
                total += 1
        self.pre_start[self.n] = total

        self.table = <long long*>malloc((self.table_len if self.table_len else 1) * sizeof(long long))
        for k in range(self.table_len):
            self.table[k] = table[k]

        self.ring = <Slot*>calloc(self.slots, sizeof(Slot))

        self.n_events = len(events)
        self.ev_cursor = 0
        self.ev_cycle = <long long*>malloc((self.n_events if self.n_events else 1) * sizeof(long long))
        self.ev_neuron = <int*>malloc((self.n_events if self.n_events else 1) * sizeof(int))
        self.ev_is_inj = <char*>malloc((self.n_events if self.n_events else 1))
        self.ev_value = <long long*>malloc((self.n_events if self.n_events else 1) * sizeof(long long))
        for k in range(self.n_events):
            cyc, neuron, is_inj, value = events[k]
            self.ev_cycle[k] = cyc
            self.ev_neuron[k] = neuron
            self.ev_is_inj[k] = 1 if is_inj else 0
            self.ev_value[k] = value

    def __dealloc__(self):
        cdef int i
        free(self.threshold); free(self.std_rest); free(self.ref_rest)
        free(self.abs_ref); free(self.rel_ref); free(self.leak)
        free(self.acc); free(self.phase); free(self.phase_left)
        free(self.pending); free(self.last_exceed); free(self.got_delivery)
        free(self.fired_buf)
        free(self.syn_pre); free(self.syn_post); free(self.syn_weight)
        free(self.syn_delay); free(self.syn_last_delivery); free(self.syn_delivered)
        free(self.out_start); free(self.out_list)
        free(self.pre_start); free(self.pre_list)
        free(self.table)
        if self.ring != NULL:
            for i in range(self.slots):
                free(self.ring[i].data)
            free(self.ring)
        free(self.ev_cycle); free(self.ev_neuron)
        free(self.ev_is_inj); free(self.ev_value)

    cdef void c_step(self) nogil:
        cdef long long t = self.cycle
        cdef int i, j, p, idx
        cdef long long floor, value, w, k
        cdef long long half = self.table_len // 2
        cdef Slot* slot

        # FIRE
        self.fired_count = 0
        for i in range(self.n):
            if not self.pending[i]:
                continue
            self.fired_buf[self.fired_count] = i
            self.fired_count += 1
            for idx in range(self.out_start[i], self.out_start[i + 1]):
                j = self.out_list[idx]
                slot_push(&self.ring[(t + self.syn_delay[j]) % self.slots], j)
            if self.rel_ref[i] > 0:
                self.acc[i] = self.ref_rest[i]
            else:
                self.acc[i] = self.std_rest[i]
            if self.abs_ref[i] > 0:
                self.phase[i] = PH_ABS
                self.phase_left[i] = self.abs_ref[i]
            elif self.rel_ref[i] > 0:
                self.phase[i] = PH_REL
                self.phase_left[i] = self.rel_ref[i]
            else:
                self.phase[i] = PH_STD
                self.phase_left[i] = 0
            self.pending[i] = 0

        # LEAK
        for i in range(self.n):
            if self.leak[i] <= 0:
                continue
            if self.phase[i] == PH_STD:
                floor = self.std_rest[i]
            elif self.phase[i] == PH_REL:
                floor = self.ref_rest[i]
            else:
                continue
            if self.acc[i] > floor:
                value = self.acc[i] - self.leak[i]
                self.acc[i] = value if value > floor else floor

        # DELIVER
        slot = &self.ring[t % self.slots]
        for idx in range(slot.size):
            j = slot.data[idx]
            self.syn_delivered[j] = 1
            self.syn_last_delivery[j] = t
            p = self.syn_post[j]
            self.got_delivery[p] = 1
            if self.phase[p] != PH_ABS:
                self.acc[p] += self.syn_weight[j]
        while self.ev_cursor < self.n_events and self.ev_cycle[self.ev_cursor] == t:
            idx = self.ev_cursor
            self.ev_cursor += 1
            i = self.ev_neuron[idx]
            if self.phase[i] == PH_ABS:
                continue
            if self.ev_is_inj[idx]:
                self.acc[i] += self.ev_value[idx]
            else:
                self.acc[i] += self.input_amount

        # SETTLE
        if self.stdp_enabled and self.table_len > 0:
            for i in range(self.n):
                if self.acc[i] > self.threshold[i]:
                    self.pending[i] = 1
                    for idx in range(self.pre_start[i], self.pre_start[i + 1]):
                        j = self.pre_list[idx]
                        if self.syn_last_delivery[j] < 0:
                            continue
                        k = half - (t - self.syn_last_delivery[j])
                        if k >= 0:
                            w = self.syn_weight[j] + self.table[k]
                            self.syn_weight[j] = self.weight_lo if w < self.weight_lo \
                                else (self.weight_hi if w > self.weight_hi else w)
                    self.last_exceed[i] = t
                elif self.got_delivery[i] and self.last_exceed[i] >= 0:
                    k = half + (t - self.last_exceed[i])
                    if k < self.table_len:
                        for idx in range(self.pre_start[i], self.pre_start[i + 1]):
                            j = self.pre_list[idx]
                            if self.syn_delivered[j]:
                                w = self.syn_weight[j] + self.table[k]
                                self.syn_weight[j] = self.weight_lo if w < self.weight_lo \
                                    else (self.weight_hi if w > self.weight_hi else w)
        else:
            for i in range(self.n):
                if self.acc[i] > self.threshold[i]:
                    self.pending[i] = 1
                    self.last_exceed[i] = t

    cdef void c_finish(self) nogil:
        # Floors and refractory bookkeeping, after the report snapshot.
        cdef int i, idx, j
        cdef Slot* slot
        cdef long long t = self.cycle
        for i in range(self.n):
            if self.phase[i] == PH_STD:
                if self.acc[i] < self.std_rest[i]:
                    self.acc[i] = self.std_rest[i]
            elif self.phase[i] == PH_REL:
                if self.acc[i] < self.ref_rest[i]:
                    self.acc[i] = self.ref_rest[i]
                self.phase_left[i] -= 1
                if self.phase_left[i] == 0:
                    self.phase[i] = PH_STD
                    if self.acc[i] < self.std_rest[i]:
                        self.acc[i] = self.std_rest[i]
            else:
                self.phase_left[i] -= 1
                if self.phase_left[i] == 0:
                    if self.rel_ref[i] > 0:
                        self.phase[i] = PH_REL
                        self.phase_left[i] = self.rel_ref[i]
                    else:
                        self.phase[i] = PH_STD
        slot = &self.ring[t % self.slots]
        for idx in range(slot.size):
            j = slot.data[idx]
            self.syn_delivered[j] = 0
            self.got_delivery[self.syn_post[j]] = 0
        slot.size = 0
        self.cycle = t + 1

    def step(self):
        cdef int i
        cdef long long t = self.cycle
        self.c_step()
        fired = tuple([self.names[self.fired_buf[i]] for i in range(self.fired_count)])
        charges = {}
        for i in range(self.n):
            charges[self.names[i]] = self.acc[i]
        self.c_finish()
        return CycleReport(t, fired, charges)

    def advance(self, long long n_cycles):
        cdef long long c
        with nogil:
            for c in range(n_cycles):
                self.c_step()
                self.c_finish()

    def charges(self):
        cdef int i
        return {self.names[i]: self.acc[i] for i in range(self.n)}

    def weights(self):
        cdef int j
        return [self.syn_weight[j] for j in range(self.n_syn)]

    def phases(self):
        cdef int i
        return [(self.phase[i], self.phase_left[i]) for i in range(self.n)]

    @property
    def current_cycle(self):
        return self.cycle
