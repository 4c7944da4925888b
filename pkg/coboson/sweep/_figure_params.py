"""
The :mod:`coboson.sweep._figure_params` module stores the parameter
grids that reproduce the data behind the published figures of the
coboson bound hierarchy. Moreover, it provides a utility for
retrieving these grids.

Only parameter grids are stored here, and plotting is left to the
consumer of the output files.
"""

# License: MIT

import copy

from coboson.utils._checks import _check_figure_choice


###########################################################
# Panel templates
###########################################################


lambda1_panel_template = dict(mode='sweep_lambda1',
                              P=0.2,
                              start=None,
                              stop=None,
                              steps=200)

P_panel_template = dict(mode='sweep_p',
                        lambda1=0.3,
                        start=None,
                        stop=None,
                        steps=200)


# Exact against smooth bounds, N=4 in the upper and N=10 in the lower row.
fig1_panels = []
for N in [4, 10]:
    lambda1_panel = copy.deepcopy(lambda1_panel_template)
    lambda1_panel.update(dict(name='N%d_lambda1' % (N), N=N))
    P_panel = copy.deepcopy(P_panel_template)
    P_panel.update(dict(name='N%d_P' % (N), N=N))
    fig1_panels.extend([lambda1_panel, P_panel])


# Extremal distributions at the worked pair, tail cut at 50 modes.
fig2_panels = [dict(name='distributions', mode='extremal', P=0.2, lambda1=0.3,
                    kinds=['uniform_l1', 'uniform_p', 'min_pl1',
                           'max_pl1', 'peaked_p', 'peaked_l1'],
                    s_cut=50)]


# Full hierarchy, N=3 in the upper and N=30 in the lower row.
fig3_panels = []
for N in [3, 30]:
    lambda1_panel = copy.deepcopy(lambda1_panel_template)
    lambda1_panel.update(dict(name='N%d_lambda1' % (N), N=N))
    P_panel = copy.deepcopy(P_panel_template)
    P_panel.update(dict(name='N%d_P' % (N), N=N))
    fig3_panels.extend([lambda1_panel, P_panel])


# Close-to-extremal distributions at P=0.2, and the extremal parameters
# over 200 uniform steps across the feasible interval of lambda1.
fig4_panels = [dict(name='a', mode='extremal', P=0.2, lambda1=0.215,
                    kinds=['min_pl1', 'max_pl1'], s_cut=50),
               dict(name='b', mode='extremal', P=0.2, lambda1=0.42,
                    kinds=['min_pl1', 'max_pl1'], s_cut=50),
               dict(name='grid', mode='extremal_grid', P=0.2,
                    start=None, stop=None, steps=200)]


# Deviation from bosonic behavior as a function of N at P=0.001, where
# lambda1 blends the ends of its feasible interval with the given weight
# on lambda1_min(P).
fig5_panels = []
for label, weight in zip(['a', 'b', 'c', 'd'], [0.9, 0.5, 0.1, 0.01]):
    fig5_panels.append(dict(name=label, mode='sweep_n', P=0.001,
                            lambda1_weight=weight, start=1, stop=1000,
                            steps=1000))


figure_dict = dict(fig1=fig1_panels,
                   fig2=fig2_panels,
                   fig3=fig3_panels,
                   fig4=fig4_panels,
                   fig5=fig5_panels)


def figure_params(figure='fig5') -> list:
    """
    Retrieves the panel parameters of a figure.

    Parameters
    ----------
    figure : str
        One of 'fig1', 'fig2', 'fig3', 'fig4' or 'fig5'.
    """

    figure = _check_figure_choice(figure)
    return copy.deepcopy(figure_dict[figure])
