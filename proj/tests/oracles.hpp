#pragma once

// Independent reference implementations used only by tests. Exact rational
// arithmetic (GMP) where the quantity is rational in its inputs, 256-bit
// floats (MPFR) elsewhere. Deliberately built from their own binomial,
// power, and log routines rather than the library's.

namespace oracle {

double log2_binomial(long long n, long long k);
double cluster_info_bits(long long node_total, long long cluster_count);
double max_capacity(double link_capacity, double guard_factor, long long n);
double total_update_distance(double area, long long n, bool per_hop_root);
double route_update_time(long long node_total, long long cluster_count, double area,
                         double link_capacity, double guard_factor, bool per_hop_root);

double binomial_pmf(long long n, long long k, double p);
double shorter_route_probability(long long n, double p, long long k);
double expected_wait(double w, double success_probability);
double per_hop_flow_delay(double flow_bits, double hop_rate, long long n_l);
double predictive_gain(double c_current, double dt, double c_future);
double differential_gain(long long n, double p, double w, double flow_bits, double hop_rate,
                         long long hops, long long hop_reduction);
double flash_formation_wait(long long n, double p, double w, long long n_l);

}  // namespace oracle
